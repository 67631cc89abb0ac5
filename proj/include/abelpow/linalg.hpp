#pragma once

// Dense complex linear algebra kernel. Everything here is a pure function of
// its inputs; Eigen does the factorizations.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "abelpow/error.hpp"

namespace abelpow::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kEpsilon = 2.220446049250313e-16;

/// Largest dimension accepted at the I/O boundary.
inline constexpr Index kDefaultMaxDimension = 512;

struct EigenData {
  /// Sorted by descending real part, then modulus, then argument.
  std::vector<Complex> values;
  /// Frobenius norm of A - U S U^* for the computed Schur form.
  double backward_error = 0.0;
};

/// Columns are orthonormal.
struct SubspaceBasis {
  Index dimension_ambient = 0;
  ComplexMatrix vectors;

  Index dimension() const { return vectors.cols(); }
};

bool all_finite(const ComplexMatrix& a);
void require_finite(const ComplexMatrix& a, const char* what);
void require_square(const ComplexMatrix& a, const char* what);

ComplexMatrix identity(Index n);

/// Default relative rank threshold n * eps (multiplied by sigma_max inside
/// the rank-revealing routines).
double default_rank_tol(Index n);

/// Pivoted LU solve of A X = RHS. Throws SingularMatrix when a pivot falls
/// below n * eps * ||A||_inf.
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& rhs);

/// Schur-based eigenvalues with algebraic multiplicity.
EigenData eigendecompose(const ComplexMatrix& a);

/// Deterministic spectrum order used everywhere a list of eigenvalues leaves
/// the library.
bool eigen_order(const Complex& lhs, const Complex& rhs);

std::vector<double> singular_values(const ComplexMatrix& a);

/// Numerical rank: number of singular values above rank_tol * max(sigma_max,
/// scale). Pass the size of the matrix A was formed from as `scale` so that
/// pure rounding noise (e.g. I - I) counts as rank 0.
Index numerical_rank(const ComplexMatrix& a, double rank_tol, double scale = 0.0);

/// Right singular vectors with sigma <= rank_tol * max(sigma_max, scale).
SubspaceBasis kernel_basis(const ComplexMatrix& a, double rank_tol, double scale = 0.0);

/// Left singular vectors with sigma > rank_tol * max(sigma_max, scale).
SubspaceBasis image_basis(const ComplexMatrix& a, double rank_tol, double scale = 0.0);

/// exp(tB) by scaling and squaring around a Pade core.
ComplexMatrix matrix_exponential(const ComplexMatrix& b, double t);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// Largest eigenvalue of (T + T^*)/2, i.e. sup Re W(T).
double hermitian_part_max_eig(const ComplexMatrix& t);

/// Largest principal angle between two subspaces of the same ambient space.
/// Subspaces of different dimension are at angle pi/2.
double max_principal_angle(const SubspaceBasis& a, const SubspaceBasis& b);

double spectral_radius(const EigenData& eig);
double spectral_abscissa(const EigenData& eig);

/// Product of eigenvalues from an LU factorization (independent of the Schur
/// route).
Complex determinant(const ComplexMatrix& a);

}  // namespace abelpow::linalg
