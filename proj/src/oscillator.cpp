#include "abelpow/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace abelpow::oscillator {

DiagonalOscillator::DiagonalOscillator(Index truncation) : truncation_(truncation) {
  require(truncation >= 2, "oscillator truncation must be at least 2");
}

ComplexMatrix DiagonalOscillator::as_matrix() const {
  ComplexVector diag(truncation_);
  for (Index n = 0; n < truncation_; ++n) diag(n) = eigenvalue(n);
  return diag.asDiagonal();
}

namespace {

void require_above_one(const DiagonalOscillator& model, double lambda) {
  require(std::isfinite(lambda), "lambda must be finite");
  if (lambda > 1.0) return;
  const double nearest = std::round((1.0 - lambda) / 2.0);
  if (nearest >= 0.0 && nearest < static_cast<double>(model.truncation()) &&
      std::abs(lambda - DiagonalOscillator::eigenvalue(static_cast<Index>(nearest))) <= 1e-12) {
    fail(ErrorCode::PoleHit, "lambda = " + std::to_string(lambda) + " is an eigenvalue of the model");
  }
  fail(ErrorCode::InvalidArgument, "lambda must exceed 1, got " + std::to_string(lambda));
}

// (lambda - 1)/(lambda - 1 + 2n): the n-th eigenvalue of (lambda - 1) R(lambda, T).
double scaled_eigenvalue(double lambda, Index n) {
  return (lambda - 1.0) / (lambda - 1.0 + 2.0 * static_cast<double>(n));
}

}  // namespace

ComplexVector resolvent_apply(const DiagonalOscillator& model, double lambda, const ComplexVector& x) {
  require_above_one(model, lambda);
  if (x.size() != model.truncation()) {
    fail(ErrorCode::DimensionMismatch, "coefficient vector has length " + std::to_string(x.size()) +
                                           ", model truncation is " + std::to_string(model.truncation()));
  }
  ComplexVector out(x.size());
  for (Index n = 0; n < x.size(); ++n) out(n) = x(n) / (lambda - DiagonalOscillator::eigenvalue(n));
  return out;
}

CConstant c_constant(const DiagonalOscillator& model, double lambda) {
  require_above_one(model, lambda);
  CConstant c;
  // Smallest terms first.
  for (Index n = model.truncation() - 1; n >= 1; --n) {
    const double term = scaled_eigenvalue(lambda, n);
    c.partial_sum += term * term;
  }
  const double shift = lambda - 1.0;
  c.tail = shift * shift / (2.0 * (shift + 2.0 * static_cast<double>(model.truncation())));
  return c;
}

PowerGap scaled_resolvent_power_gap(const DiagonalOscillator& model, double lambda, int m) {
  require_above_one(model, lambda);
  require(m >= 1, "power m must be at least 1");
  PowerGap out;
  for (Index n = 1; n < model.truncation(); ++n) {
    out.gap = std::max(out.gap, std::pow(scaled_eigenvalue(lambda, n), m));
  }
  out.ratio = (lambda - 1.0) / (lambda + 1.0);
  if (m >= 4) out.bound = std::pow(out.ratio, m - 2) * c_constant(model, lambda).value();
  return out;
}

FirstOrderGap first_order_gap(const DiagonalOscillator& model, double lambda) {
  require_above_one(model, lambda);
  FirstOrderGap out;
  for (Index n = 1; n < model.truncation(); ++n) out.gap = std::max(out.gap, scaled_eigenvalue(lambda, n));
  out.bound = lambda - 1.0;
  return out;
}

std::vector<double> hermite_functions(int n_max, double t) {
  require(n_max >= 0, "hermite index must be non-negative");
  std::vector<double> x(static_cast<std::size_t>(n_max) + 1);
  x[0] = std::exp(-0.5 * t * t) / std::sqrt(std::sqrt(std::numbers::pi));
  if (n_max >= 1) x[1] = std::sqrt(2.0) * t * x[0];
  for (int k = 1; k < n_max; ++k) {
    const double kk = static_cast<double>(k);
    x[k + 1] = t * std::sqrt(2.0 / (kk + 1.0)) * x[k] - std::sqrt(kk / (kk + 1.0)) * x[k - 1];
  }
  return x;
}

double hermite_function(int n, double t) { return hermite_functions(n, t).back(); }

Index Grid::points() const {
  require(step > 0.0 && t_max > t_min, "grid needs t_max > t_min and a positive step");
  return static_cast<Index>(std::llround((t_max - t_min) / step)) + 1;
}

GridFunction sample_hermite(int n, const Grid& grid) {
  GridFunction f{grid, {}};
  const Index count = grid.points();
  f.samples.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) f.samples.push_back(hermite_function(n, grid.at(i)));
  return f;
}

double oscillator_residual(const GridFunction& f, double eigenvalue) {
  const auto& s = f.samples;
  const double h2 = f.grid.step * f.grid.step;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double t = f.grid.at(static_cast<Index>(i));
    const double second = (s[i - 1] - 2.0 * s[i] + s[i + 1]) / h2;
    worst = std::max(worst, std::abs(second + (2.0 - t * t) * s[i] - eigenvalue * s[i]));
  }
  return worst;
}

double eigen_residual(int n, const Grid& grid) {
  require(n >= 0, "hermite index must be non-negative");
  const double reach = std::sqrt(2.0 * n + 1.0) + 5.0;
  require(-grid.t_min >= reach && grid.t_max >= reach,
          "grid must cover [-L, L] with L >= sqrt(2n+1) + 5 = " + std::to_string(reach));
  const double residual = oscillator_residual(sample_hermite(n, grid), DiagonalOscillator::eigenvalue(n));
  const double allowed = 100.0 * grid.step * grid.step * std::pow(2.0 * n + 3.0, 2);
  if (residual > allowed) {
    fail(ErrorCode::GridTooCoarse, "residual " + std::to_string(residual) + " exceeds " + std::to_string(allowed));
  }
  return residual;
}

Eigen::MatrixXd hermite_gram(int count, const Grid& grid) {
  require(count >= 1, "hermite_gram: count must be positive");
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(count, count);
  const Index points = grid.points();
  for (Index i = 0; i < points; ++i) {
    const auto x = hermite_functions(count - 1, grid.at(i));
    const double w = (i == 0 || i == points - 1) ? 0.5 * grid.step : grid.step;
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), count);
    gram.noalias() += w * v * v.transpose();
  }
  return gram;
}

DecompositionCheck kernel_image_decomposition_check(const DiagonalOscillator& model, const ComplexVector& x) {
  if (x.size() != model.truncation()) {
    fail(ErrorCode::DimensionMismatch, "coefficient vector has length " + std::to_string(x.size()) +
                                           ", model truncation is " + std::to_string(model.truncation()));
  }
  const double norm = x.norm();
  if (std::abs(x(0)) > 1e-12 * norm) {
    fail(ErrorCode::NotInComplement, "x has a component along x_0 of modulus " + std::to_string(std::abs(x(0))));
  }
  DecompositionCheck check;
  check.y = ComplexVector::Zero(x.size());
  for (Index n = 1; n < x.size(); ++n) check.y(n) = x(n) / (2.0 * static_cast<double>(n));
  // (I - T) acts on x_n as multiplication by 1 - (1 - 2n) = 2n.
  ComplexVector image(x.size());
  for (Index n = 0; n < x.size(); ++n) image(n) = (1.0 - DiagonalOscillator::eigenvalue(n)) * check.y(n);
  check.residual = (image - x).norm();
  check.pass = check.residual <= 1e-12 * norm;
  return check;
}

}  // namespace abelpow::oscillator
