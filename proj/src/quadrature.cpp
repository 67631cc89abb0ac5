#include "abelpow/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "abelpow/error.hpp"

namespace abelpow::quadrature {

Rule gauss_laguerre(int node_count, double a) {
  require(node_count >= 1, "gauss_laguerre: node_count must be positive");
  require(a > -1.0, "gauss_laguerre: exponent must exceed -1");
  const int n = node_count;
  // Orthonormal Laguerre recurrence: b_{k+1} p_{k+1} = (x - d_k) p_k - b_k p_{k-1}.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + a + 1.0;
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k * (k + a));

  Rule rule;
  if (n == 1) {
    rule.nodes = {diag(0)};
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "Golub-Welsch eigen-solve failed");
    const auto& x = solver.eigenvalues();
    rule.nodes.assign(x.data(), x.data() + x.size());
  }

  // w_i = 1 / sum_k p_k(x_i)^2, tracked as mantissa * exp(log_scale).
  rule.weights.reserve(rule.nodes.size());
  for (double x : rule.nodes) {
    double prev = 0.0, cur = 1.0, sum = 1.0, log_scale = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      const double b_prev = k > 0 ? off(k - 1) : 0.0;
      const double next = ((x - diag(k)) * cur - b_prev * prev) / off(k);
      prev = cur;
      cur = next;
      sum += cur * cur;
      if (std::abs(cur) > 1e100) {
        prev *= 1e-100;
        cur *= 1e-100;
        sum *= 1e-200;
        log_scale += 200.0 * std::log(10.0);
      }
    }
    rule.weights.push_back(std::exp(-std::log(sum) - log_scale));
  }
  return rule;
}

Rule composite_simpson(int intervals, double lo, double hi) {
  require(intervals >= 2 && intervals % 2 == 0, "composite_simpson: need an even number of intervals");
  require(hi > lo, "composite_simpson: empty interval");
  const double h = (hi - lo) / intervals;
  Rule rule;
  rule.nodes.reserve(static_cast<std::size_t>(intervals) + 1);
  rule.weights.reserve(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    rule.nodes.push_back(lo + i * h);
    rule.weights.push_back(c * h / 3.0);
  }
  return rule;
}

namespace {

linalg::ComplexMatrix sum_range(std::size_t lo, std::size_t hi,
                                const std::function<linalg::ComplexMatrix(std::size_t)>& term) {
  if (hi - lo == 1) return term(lo);
  const std::size_t mid = lo + (hi - lo) / 2;
  return sum_range(lo, mid, term) + sum_range(mid, hi, term);
}

}  // namespace

linalg::ComplexMatrix pairwise_sum(std::size_t count, const std::function<linalg::ComplexMatrix(std::size_t)>& term) {
  require(count >= 1, "pairwise_sum: empty range");
  return sum_range(0, count, term);
}

}  // namespace abelpow::quadrature
