#pragma once

// Truncated diagonal model of the closure of D^2 + (2 - t^2) on L^2(R):
// eigenvalues 1 - 2n on the orthonormal Hermite functions x_n. Coefficient
// vectors are expansions in that basis.

#include <optional>
#include <vector>

#include "abelpow/linalg.hpp"

namespace abelpow::oscillator {

using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::Index;

class DiagonalOscillator {
 public:
  static constexpr Index kDefaultTruncation = 10000;

  explicit DiagonalOscillator(Index truncation = kDefaultTruncation);

  Index truncation() const noexcept { return truncation_; }
  static constexpr double eigenvalue(Index n) noexcept { return 1.0 - 2.0 * static_cast<double>(n); }

  /// diag(1 - 2n) for n < truncation.
  ComplexMatrix as_matrix() const;

 private:
  Index truncation_;
};

/// Componentwise division by lambda - 1 + 2n. Requires lambda > 1.
ComplexVector resolvent_apply(const DiagonalOscillator& model, double lambda, const ComplexVector& x);

struct PowerGap {
  /// ||[(lambda-1) R(lambda,T)]^m - P_0|| on the truncation.
  double gap = 0.0;
  /// (lambda - 1)/(lambda + 1).
  double ratio = 0.0;
  /// ratio^{m-2} C(lambda), available for m >= 4.
  std::optional<double> bound;
};

PowerGap scaled_resolvent_power_gap(const DiagonalOscillator& model, double lambda, int m);

struct FirstOrderGap {
  double gap = 0.0;    // ||(lambda-1) R(lambda,T) - P_0||
  double bound = 0.0;  // lambda - 1
};

FirstOrderGap first_order_gap(const DiagonalOscillator& model, double lambda);

struct CConstant {
  /// sum_{1 <= n < N_tr} ((lambda-1)/(lambda-1+2n))^2
  double partial_sum = 0.0;
  /// int_{N_tr}^inf ((lambda-1)/(lambda-1+2u))^2 du, the reported uncertainty.
  double tail = 0.0;

  double value() const noexcept { return partial_sum + tail; }
};

CConstant c_constant(const DiagonalOscillator& model, double lambda);

/// Orthonormal Hermite function x_n(t) by the normalized three-term
/// recurrence; x_0(t) = pi^{-1/4} e^{-t^2/2}.
double hermite_function(int n, double t);

/// x_0(t), ..., x_{n_max}(t).
std::vector<double> hermite_functions(int n_max, double t);

struct Grid {
  double t_min = -12.0;
  double t_max = 12.0;
  double step = 1e-3;

  Index points() const;
  double at(Index i) const { return t_min + static_cast<double>(i) * step; }
};

struct GridFunction {
  Grid grid;
  std::vector<double> samples;
};

GridFunction sample_hermite(int n, const Grid& grid);

/// max over interior points of |D_h^2 f + (2 - t^2) f - eigenvalue f|, with
/// D_h^2 the central second difference.
double oscillator_residual(const GridFunction& f, double eigenvalue);

/// Residual of x_n against eigenvalue 1 - 2n. The grid must reach beyond
/// the turning points (|t| >= sqrt(2n+1) + 5); throws GridTooCoarse when the
/// residual exceeds 100 h^2 (2n+3)^2.
double eigen_residual(int n, const Grid& grid);

/// Trapezoid Gram matrix of x_0..x_{count-1}.
Eigen::MatrixXd hermite_gram(int count, const Grid& grid);

struct DecompositionCheck {
  ComplexVector y;
  double residual = 0.0;  // ||(I - T) y - x||
  bool pass = false;      // residual <= 1e-12 ||x||
};

/// For x with no x_0 component, y_n = x_n / (2n) solves (I - T) y = x.
DecompositionCheck kernel_image_decomposition_check(const DiagonalOscillator& model, const ComplexVector& x);

}  // namespace abelpow::oscillator
