#pragma once

// Continuous-time side: T_t = exp(tB) and its Abel average
//   A~_lambda = lambda int_0^inf e^{-lambda s} T_s ds = lambda (lambda I - B)^{-1},
// in closed form and by quadrature, plus the bridge to the discrete average
// with alpha = 1/(1 + lambda), T = I + B.

#include <string_view>
#include <vector>

#include "abelpow/abel.hpp"

namespace abelpow::semigroup {

using linalg::ComplexMatrix;

class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(ComplexMatrix b);
  const ComplexMatrix& matrix() const noexcept { return b_; }
  linalg::Index dimension() const noexcept { return b_.rows(); }

 private:
  ComplexMatrix b_;
};

enum class QuadratureScheme { gauss_laguerre, truncated_simpson };

constexpr std::string_view to_string(QuadratureScheme s) {
  return s == QuadratureScheme::gauss_laguerre ? "gauss_laguerre" : "truncated_simpson";
}

struct QuadratureSpec {
  /// Gauss-Laguerre nodes, or Simpson intervals.
  int node_count = 64;
  /// Simpson truncation horizon in units of 1/lambda.
  double t_max_factor = 40.0;
  QuadratureScheme scheme = QuadratureScheme::gauss_laguerre;

  void validate() const;
};

ComplexMatrix semigroup_at(const GeneratorMatrix& g, double t);

/// lambda (lambda I - B)^{-1}; throws ResolventPole.
ComplexMatrix abel_average_closed(const GeneratorMatrix& g, double lambda);

/// int_0^inf e^{-u} T_{u/lambda} du. Checks max Re sigma(B) < lambda first
/// (IntegralDiverges) and compares against the 2n-node value
/// (QuadratureUnstable beyond 1e-6 relative).
ComplexMatrix abel_average_quadrature(const GeneratorMatrix& g, double lambda, const QuadratureSpec& spec = {});

/// A~_lambda^n = 1/Gamma(n) int_0^inf u^{n-1} e^{-u} T_{u/lambda} du, weights
/// formed in the log domain.
ComplexMatrix abel_power_quadrature(const GeneratorMatrix& g, double lambda, int n, const QuadratureSpec& spec = {});

struct BridgeReport {
  double alpha = 0.0;
  ComplexMatrix continuous;
  ComplexMatrix discrete;
  double defect = 0.0;
  double relative_defect = 0.0;
  bool pass = false;  // relative_defect <= 1e-12
};

BridgeReport discrete_bridge(const GeneratorMatrix& g, double lambda);

struct LogNormSample {
  double t = 0.0;
  double value = 0.0;  // log ||T_t|| / t
};

struct LogNormReport {
  std::vector<LogNormSample> samples;
  bool heuristic_holds = false;
  bool overflow = false;
  /// max Re sigma(B), the exact growth bound.
  double spectral_bound = 0.0;
};

LogNormReport growth_log_norm(const GeneratorMatrix& g, const std::vector<double>& t_grid);

struct ContinuousErgodicReport {
  abel::ConvergenceReport convergence;
  /// ||B L|| when converged.
  double kernel_defect = 0.0;
  bool projects_onto_kernel = false;
};

/// Powers of A~_lambda; the limit must be annihilated by B.
ContinuousErgodicReport ergodic_projection_continuous(const GeneratorMatrix& g, double lambda, double tol = 1e-10);

}  // namespace abelpow::semigroup
