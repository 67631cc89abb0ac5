#include "abelpow/semigroup.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "abelpow/quadrature.hpp"

namespace abelpow::semigroup {

using linalg::Index;

GeneratorMatrix::GeneratorMatrix(ComplexMatrix b) : b_(std::move(b)) {
  linalg::require_square(b_, "generator B");
  linalg::require_finite(b_, "generator B");
}

void QuadratureSpec::validate() const {
  require(node_count >= 8, "quadrature node_count must be at least 8");
  require(t_max_factor >= 10.0, "quadrature t_max_factor must be at least 10");
  if (scheme == QuadratureScheme::truncated_simpson) {
    require(node_count % 2 == 0, "Simpson needs an even interval count");
  }
}

ComplexMatrix semigroup_at(const GeneratorMatrix& g, double t) {
  require(t >= 0.0, "semigroup_at: t must be non-negative");
  return linalg::matrix_exponential(g.matrix(), t);
}

namespace {

void require_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive and finite");
}

// 1/Gamma(n) int_0^inf u^{n-1} e^{-u} T_{u/lambda} du with the given node count.
ComplexMatrix integrate(const GeneratorMatrix& g, double lambda, int n, const QuadratureSpec& spec, int nodes) {
  quadrature::Rule rule;
  if (spec.scheme == QuadratureScheme::gauss_laguerre) {
    rule = quadrature::gauss_laguerre(nodes, n - 1.0);
  } else {
    rule = quadrature::composite_simpson(nodes, 0.0, spec.t_max_factor);
    const double log_gamma = std::lgamma(static_cast<double>(n));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = rule.nodes[i];
      double density = 0.0;
      if (u > 0.0) {
        density = std::exp((n - 1.0) * std::log(u) - u - log_gamma);
      } else if (n == 1) {
        density = 1.0;
      }
      rule.weights[i] *= density;
    }
  }
  ComplexMatrix result = quadrature::pairwise_sum(rule.nodes.size(), [&](std::size_t i) -> ComplexMatrix {
    if (rule.weights[i] == 0.0) return ComplexMatrix::Zero(g.dimension(), g.dimension());
    return rule.weights[i] * semigroup_at(g, rule.nodes[i] / lambda);
  });
  if (!linalg::all_finite(result)) fail(ErrorCode::Overflow, "quadrature sum overflowed");
  return result;
}

}  // namespace

ComplexMatrix abel_average_closed(const GeneratorMatrix& g, double lambda) {
  require_lambda(lambda);
  const Index n = g.dimension();
  try {
    return lambda * linalg::solve_linear(lambda * linalg::identity(n) - g.matrix(), linalg::identity(n));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      fail(ErrorCode::ResolventPole, "lambda = " + std::to_string(lambda) + " is numerically in sigma(B)");
    }
    throw;
  }
}

ComplexMatrix abel_power_quadrature(const GeneratorMatrix& g, double lambda, int n, const QuadratureSpec& spec) {
  require_lambda(lambda);
  require(n >= 1, "abel_power_quadrature: n must be at least 1");
  spec.validate();
  if (g.dimension() == 0) return g.matrix();
  const double abscissa = linalg::spectral_abscissa(linalg::eigendecompose(g.matrix()));
  if (abscissa >= lambda) {
    fail(ErrorCode::IntegralDiverges, "max Re sigma(B) = " + std::to_string(abscissa) + " >= lambda = " +
                                          std::to_string(lambda));
  }
  const ComplexMatrix coarse = integrate(g, lambda, n, spec, spec.node_count);
  const ComplexMatrix fine = integrate(g, lambda, n, spec, 2 * spec.node_count);
  const double scale = std::max(linalg::operator_norm(fine), std::numeric_limits<double>::min());
  const double disagreement = linalg::operator_norm(coarse - fine) / scale;
  if (disagreement > 1e-6) {
    fail(ErrorCode::QuadratureUnstable, "node counts " + std::to_string(spec.node_count) + " and " +
                                            std::to_string(2 * spec.node_count) + " disagree by " +
                                            std::to_string(disagreement) + " (relative)");
  }
  return coarse;
}

ComplexMatrix abel_average_quadrature(const GeneratorMatrix& g, double lambda, const QuadratureSpec& spec) {
  return abel_power_quadrature(g, lambda, 1, spec);
}

BridgeReport discrete_bridge(const GeneratorMatrix& g, double lambda) {
  require_lambda(lambda);
  BridgeReport report;
  report.alpha = 1.0 / (1.0 + lambda);
  report.continuous = abel_average_closed(g, lambda);
  const ComplexMatrix t = linalg::identity(g.dimension()) + g.matrix();
  report.discrete = abel::abel_average(t, abel::AbelParameter(report.alpha));
  report.defect = linalg::operator_norm(report.continuous - report.discrete);
  const double scale = linalg::operator_norm(report.continuous);
  report.relative_defect = scale > 0.0 ? report.defect / scale : report.defect;
  report.pass = report.relative_defect <= 1e-12;
  return report;
}

LogNormReport growth_log_norm(const GeneratorMatrix& g, const std::vector<double>& t_grid) {
  require(!t_grid.empty(), "growth_log_norm: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    require(t_grid[i] > 0.0 && (i == 0 || t_grid[i] > t_grid[i - 1]),
            "growth_log_norm: t grid must be positive and increasing");
  }
  LogNormReport report;
  report.spectral_bound =
      g.dimension() == 0 ? 0.0 : linalg::spectral_abscissa(linalg::eigendecompose(g.matrix()));
  for (double t : t_grid) {
    try {
      const double norm = linalg::operator_norm(semigroup_at(g, t));
      report.samples.push_back({t, std::log(norm) / t});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      report.overflow = true;
      return report;
    }
  }
  const double last = std::abs(report.samples.back().value);
  const double previous = report.samples.size() > 1 ? std::abs(report.samples[report.samples.size() - 2].value) : last;
  report.heuristic_holds = last <= 0.01 && last <= previous;
  return report;
}

ContinuousErgodicReport ergodic_projection_continuous(const GeneratorMatrix& g, double lambda, double tol) {
  ContinuousErgodicReport report;
  abel::PowerIterationOptions opts;
  opts.tol = tol;
  report.convergence = abel::power_iterate(abel_average_closed(g, lambda), opts);
  if (report.convergence.converged) {
    const ComplexMatrix& limit = *report.convergence.limit;
    report.kernel_defect = linalg::operator_norm(g.matrix() * limit);
    const double scale = std::max(1.0, linalg::operator_norm(g.matrix())) * std::max(1.0, linalg::operator_norm(limit));
    report.projects_onto_kernel = report.kernel_defect <= 10.0 * tol * scale;
  }
  return report;
}

}  // namespace abelpow::semigroup
