#include "abelpow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace abelpow::linalg {

bool all_finite(const ComplexMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const ComplexMatrix& a, const char* what) {
  require(all_finite(a), std::string(what) + " has non-finite entries");
}

void require_square(const ComplexMatrix& a, const char* what) {
  require(a.rows() == a.cols(), std::string(what) + " must be square, got " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

double default_rank_tol(Index n) { return static_cast<double>(std::max<Index>(n, 1)) * kEpsilon; }

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& rhs) {
  require_square(a, "solve_linear: A");
  require(rhs.rows() == a.rows(), "solve_linear: RHS row count " + std::to_string(rhs.rows()) +
                                      " does not match dimension " + std::to_string(a.rows()));
  require_finite(a, "solve_linear: A");
  require_finite(rhs, "solve_linear: RHS");
  const Index n = a.rows();
  if (n == 0) return rhs;

  const double norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
  const double threshold = static_cast<double>(n) * kEpsilon * norm_inf;
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const auto& packed = lu.matrixLU();
  for (Index i = 0; i < n; ++i) {
    const double pivot = std::abs(packed(i, i));
    if (norm_inf == 0.0 || pivot <= threshold) {
      fail(ErrorCode::SingularMatrix, "pivot " + std::to_string(i) + " has modulus " +
                                          std::to_string(pivot) + " <= " + std::to_string(threshold));
    }
  }
  ComplexMatrix x = lu.solve(rhs);
  if (!all_finite(x)) fail(ErrorCode::Overflow, "solve_linear: solution overflowed");
  return x;
}

bool eigen_order(const Complex& lhs, const Complex& rhs) {
  if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
  const double ml = std::abs(lhs), mr = std::abs(rhs);
  if (ml != mr) return ml > mr;
  return std::arg(lhs) > std::arg(rhs);
}

EigenData eigendecompose(const ComplexMatrix& a) {
  require_square(a, "eigendecompose: A");
  require_finite(a, "eigendecompose: A");
  EigenData out;
  const Index n = a.rows();
  if (n == 0) return out;

  Eigen::ComplexSchur<ComplexMatrix> schur(n);
  schur.setMaxIterations(30 * n);
  schur.compute(a, true);
  if (schur.info() != Eigen::Success) {
    fail(ErrorCode::NoConvergence, "Schur iteration exceeded its sweep budget");
  }
  const ComplexMatrix& tri = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  out.values.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out.values.push_back(tri(i, i));
  std::sort(out.values.begin(), out.values.end(), eigen_order);
  out.backward_error = (a - u * tri.triangularView<Eigen::Upper>() * u.adjoint()).norm();
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return {};
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

namespace {

Index rank_from(const Eigen::VectorXd& sigma, double rank_tol, double scale) {
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double cut = rank_tol * std::max(sigma(0), scale);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cut) ++rank;
  return rank;
}

}  // namespace

Index numerical_rank(const ComplexMatrix& a, double rank_tol, double scale) {
  require(rank_tol > 0.0, "rank_tol must be positive");
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return rank_from(svd.singularValues(), rank_tol, scale);
}

SubspaceBasis kernel_basis(const ComplexMatrix& a, double rank_tol, double scale) {
  require(rank_tol > 0.0, "rank_tol must be positive");
  require_finite(a, "kernel_basis: A");
  SubspaceBasis out{a.cols(), ComplexMatrix(a.cols(), 0)};
  if (a.cols() == 0) return out;
  if (a.rows() == 0) {
    out.vectors = identity(a.cols());
    return out;
  }
  Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index rank = rank_from(svd.singularValues(), rank_tol, scale);
  out.vectors = svd.matrixV().rightCols(a.cols() - rank);
  return out;
}

SubspaceBasis image_basis(const ComplexMatrix& a, double rank_tol, double scale) {
  require(rank_tol > 0.0, "rank_tol must be positive");
  require_finite(a, "image_basis: A");
  SubspaceBasis out{a.rows(), ComplexMatrix(a.rows(), 0)};
  if (a.size() == 0) return out;
  Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index rank = rank_from(svd.singularValues(), rank_tol, scale);
  out.vectors = svd.matrixU().leftCols(rank);
  return out;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& b, double t) {
  require_square(b, "matrix_exponential: B");
  require_finite(b, "matrix_exponential: B");
  require(std::isfinite(t), "matrix_exponential: t must be finite");
  if (b.rows() == 0) return b;
  const ComplexMatrix scaled = t * b;
  if (!all_finite(scaled)) fail(ErrorCode::Overflow, "t*B overflowed");
  ComplexMatrix result = scaled.exp();
  if (!all_finite(result)) fail(ErrorCode::Overflow, "exp(tB) exceeds the representable range");
  return result;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double hermitian_part_max_eig(const ComplexMatrix& t) {
  require_square(t, "hermitian_part_max_eig: T");
  require_finite(t, "hermitian_part_max_eig: T");
  if (t.rows() == 0) return -std::numeric_limits<double>::infinity();
  const ComplexMatrix hermitian = 0.5 * (t + t.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double max_principal_angle(const SubspaceBasis& a, const SubspaceBasis& b) {
  require(a.dimension_ambient == b.dimension_ambient,
          "max_principal_angle: subspaces live in different ambient spaces");
  if (a.dimension() != b.dimension()) return std::numbers::pi / 2;
  if (a.dimension() == 0) return 0.0;
  const ComplexMatrix residual = b.vectors - a.vectors * (a.vectors.adjoint() * b.vectors);
  return std::asin(std::min(1.0, operator_norm(residual)));
}

double spectral_radius(const EigenData& eig) {
  double r = 0.0;
  for (const auto& z : eig.values) r = std::max(r, std::abs(z));
  return r;
}

double spectral_abscissa(const EigenData& eig) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& z : eig.values) m = std::max(m, z.real());
  return m;
}

Complex determinant(const ComplexMatrix& a) {
  require_square(a, "determinant: A");
  if (a.rows() == 0) return {1.0, 0.0};
  return Eigen::PartialPivLU<ComplexMatrix>(a).determinant();
}

}  // namespace abelpow::linalg
