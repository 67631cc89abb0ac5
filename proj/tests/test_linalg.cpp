#include <doctest.h>

#include <cmath>
#include <numeric>

#include "abelpow/linalg.hpp"
#include "support.hpp"

using namespace abelpow;
using namespace abelpow::linalg;
using namespace testing;

TEST_CASE("solve_linear") {
  SUBCASE("diagonal system") {
    const auto x = solve_linear(diag({2.0, 4.0}), rows({{1.0}, {1.0}}));
    CHECK(std::abs(x(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(x(1, 0) - 0.25) < 1e-15);
  }
  SUBCASE("singular matrix is reported") {
    CHECK(code_of([] { solve_linear(rows({{1.0, 2.0}, {2.0, 4.0}}), identity(2)); }) == ErrorCode::SingularMatrix);
    CHECK(code_of([] { solve_linear(ComplexMatrix::Zero(3, 3), identity(3)); }) == ErrorCode::SingularMatrix);
  }
  SUBCASE("non-square and non-finite input") {
    CHECK(code_of([] { solve_linear(ComplexMatrix::Ones(2, 3), ComplexMatrix::Ones(2, 1)); }) ==
          ErrorCode::InvalidArgument);
    ComplexMatrix bad = identity(2);
    bad(0, 1) = std::nan("");
    CHECK(code_of([&] { solve_linear(bad, identity(2)); }) == ErrorCode::InvalidArgument);
  }
  SUBCASE("multiply-back residual on random systems up to cond 1e6") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dim(1, 64);
    std::uniform_real_distribution<double> logc(0.0, 6.0);
    for (int trial = 0; trial < 40; ++trial) {
      const Index n = dim(rng);
      // U diag(s) V^* with singular values between 1 and the target condition number.
      const Eigen::HouseholderQR<ComplexMatrix> qu(gaussian(rng, n)), qv(gaussian(rng, n));
      const double c = std::pow(10.0, logc(rng));
      Eigen::VectorXd s(n);
      for (Index i = 0; i < n; ++i) s(i) = n == 1 ? 1.0 : std::pow(c, static_cast<double>(i) / (n - 1));
      const ComplexMatrix u = qu.householderQ(), v = qv.householderQ();
      const ComplexMatrix a = u * s.cast<Complex>().asDiagonal() * v.adjoint();
      const ComplexMatrix rhs = gaussian(rng, n).leftCols(std::min<Index>(n, 3));
      const ComplexMatrix x = solve_linear(a, rhs);
      CHECK(norm2(a * x - rhs) / (norm2(a) * norm2(x)) <= 1e-10);
    }
  }
}

TEST_CASE("eigendecompose") {
  SUBCASE("ordering is by real part, then modulus, then argument") {
    const auto e = eigendecompose(diag({-1.0, Complex(0.0, 2.0), 3.0, Complex(0.0, -2.0)}));
    REQUIRE(e.values.size() == 4);
    CHECK(std::abs(e.values[0] - 3.0) < 1e-14);
    CHECK(std::abs(e.values[3] + 1.0) < 1e-14);
    // Equal real part and modulus: larger argument first.
    CHECK(std::abs(e.values[1] - Complex(0.0, 2.0)) < 1e-14);
    CHECK(std::abs(e.values[2] - Complex(0.0, -2.0)) < 1e-14);
  }
  SUBCASE("Jordan block has a double eigenvalue at 1") {
    const auto e = eigendecompose(jordan2());
    CHECK(std::abs(e.values[0] - 1.0) < 1e-12);
    CHECK(std::abs(e.values[1] - 1.0) < 1e-12);
  }
  SUBCASE("trace and LU determinant agree with the eigenvalues") {
    std::mt19937_64 rng(7);
    for (Index n : {1, 2, 5, 9, 16, 32}) {
      const ComplexMatrix a = gaussian(rng, n);
      const auto e = eigendecompose(a);
      const Complex sum = std::accumulate(e.values.begin(), e.values.end(), Complex(0.0));
      const Complex prod = std::accumulate(e.values.begin(), e.values.end(), Complex(1.0), std::multiplies<>());
      CHECK(std::abs(sum - a.trace()) <= 1e-9 * norm2(a));
      const Complex det = determinant(a);
      CHECK(std::abs(prod - det) <= 1e-8 * std::abs(det));
      CHECK(e.backward_error <= 1e-12 * a.norm());
    }
  }
  SUBCASE("empty and non-finite input") {
    CHECK(eigendecompose(ComplexMatrix(0, 0)).values.empty());
    ComplexMatrix bad = identity(2);
    bad(1, 1) = INFINITY;
    CHECK(code_of([&] { eigendecompose(bad); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("kernel_basis and image_basis") {
  const double tol = default_rank_tol(3);
  SUBCASE("diag(0, 1)") {
    const auto k = kernel_basis(diag({0.0, 1.0}), tol);
    REQUIRE(k.dimension() == 1);
    CHECK(std::abs(std::abs(k.vectors(0, 0)) - 1.0) < 1e-15);
    const auto im = image_basis(diag({0.0, 1.0}), tol);
    REQUIRE(im.dimension() == 1);
    CHECK(std::abs(std::abs(im.vectors(1, 0)) - 1.0) < 1e-15);
  }
  SUBCASE("zero matrix") {
    CHECK(kernel_basis(ComplexMatrix::Zero(3, 3), tol).dimension() == 3);
    CHECK(image_basis(ComplexMatrix::Zero(3, 3), tol).dimension() == 0);
  }
  SUBCASE("rank-one nilpotent: kernel and image are both span{e1}") {
    const ComplexMatrix n = rows({{0.0, 1.0}, {0.0, 0.0}});
    const auto k = kernel_basis(n, tol);
    const auto im = image_basis(n, tol);
    REQUIRE(k.dimension() == 1);
    REQUIRE(im.dimension() == 1);
    CHECK(std::abs(std::abs(k.vectors(0, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(std::abs(im.vectors(0, 0)) - 1.0) < 1e-15);
  }
  SUBCASE("absolute scale turns rounding noise into rank 0") {
    ComplexMatrix noise = ComplexMatrix::Zero(2, 2);
    noise(0, 1) = 1e-17;
    CHECK(numerical_rank(noise, 1e-9) == 1);
    CHECK(numerical_rank(noise, 1e-9, 2.0) == 0);
  }
  SUBCASE("rank-nullity and kernel residual on random low-rank matrices") {
    std::mt19937_64 rng(3);
    for (Index n : {2, 4, 7, 12}) {
      for (Index r = 0; r <= n; r += std::max<Index>(1, n / 3)) {
        const ComplexMatrix a = gaussian(rng, n).leftCols(r) * gaussian(rng, n).topRows(r);
        const double t = default_rank_tol(n);
        const auto k = kernel_basis(a, t);
        const auto im = image_basis(a, t);
        CHECK(k.dimension() + im.dimension() == n);
        CHECK(im.dimension() == r);
        if (k.dimension() > 0) CHECK(norm2(a * k.vectors) <= 10 * t * std::max(1.0, norm2(a)));
        CHECK(norm2(k.vectors.adjoint() * k.vectors - identity(k.dimension())) < 1e-12);
      }
    }
  }
  CHECK(code_of([] { kernel_basis(identity(2), 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("matrix_exponential") {
  CHECK(norm2(matrix_exponential(ComplexMatrix::Zero(3, 3), 2.5) - identity(3)) == 0.0);
  const auto d = matrix_exponential(diag({-1.0, -2.0}), 1.0);
  CHECK(std::abs(d(0, 0) - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(d(1, 1) - std::exp(-2.0)) < 1e-15);
  const auto n = matrix_exponential(rows({{0.0, 1.0}, {0.0, 0.0}}), 3.0);
  CHECK(norm2(n - rows({{1.0, 3.0}, {0.0, 1.0}})) < 1e-14);

  SUBCASE("semigroup law") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> time(0.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
      ComplexMatrix b = gaussian(rng, 1 + trial % 10);
      b *= 2.0 / norm2(b) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const double s = time(rng), t = time(rng);
      const double defect = norm2(matrix_exponential(b, s + t) - matrix_exponential(b, s) * matrix_exponential(b, t));
      CHECK(defect <= 1e-9 * std::exp((s + t) * norm2(b)));
    }
  }
  CHECK(code_of([] { matrix_exponential(diag({800.0}), 1.0); }) == ErrorCode::Overflow);
  CHECK(code_of([] { matrix_exponential(identity(2), INFINITY); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("operator_norm") {
  CHECK(std::abs(operator_norm(identity(5)) - 1.0) < 1e-15);
  CHECK(std::abs(operator_norm(diag({3.0, Complex(0.0, -4.0)})) - 4.0) < 1e-14);
  CHECK(std::abs(operator_norm(rows({{0.0, 2.0}, {0.0, 0.0}})) - 2.0) < 1e-14);
  CHECK(operator_norm(ComplexMatrix(0, 0)) == 0.0);
}

TEST_CASE("hermitian_part_max_eig") {
  CHECK(std::abs(hermitian_part_max_eig(identity(3)) - 1.0) < 1e-14);
  CHECK(std::abs(hermitian_part_max_eig(diag({Complex(0, 1), Complex(0, -1)}))) < 1e-14);
  CHECK(std::abs(hermitian_part_max_eig(rows({{0.0, 2.0}, {0.0, 0.0}})) - 1.0) < 1e-14);
  SUBCASE("bounds the real part of every Rayleigh quotient") {
    std::mt19937_64 rng(5);
    const ComplexMatrix t = gaussian(rng, 6);
    const double w = hermitian_part_max_eig(t);
    for (int k = 0; k < 200; ++k) {
      const Eigen::VectorXcd x = gaussian(rng, 6).col(0).normalized();
      CHECK((x.adjoint() * t * x)(0, 0).real() <= w + 1e-12);
    }
  }
}

TEST_CASE("max_principal_angle") {
  SubspaceBasis e1{2, rows({{1.0}, {0.0}})};
  SubspaceBasis e2{2, rows({{0.0}, {1.0}})};
  SubspaceBasis diagonal{2, rows({{std::sqrt(0.5)}, {std::sqrt(0.5)}})};
  CHECK(max_principal_angle(e1, e1) < 1e-15);
  CHECK(std::abs(max_principal_angle(e1, e2) - M_PI / 2) < 1e-12);
  CHECK(std::abs(max_principal_angle(e1, diagonal) - M_PI / 4) < 1e-12);
  CHECK(std::abs(max_principal_angle(e1, SubspaceBasis{2, identity(2)}) - M_PI / 2) < 1e-15);
}

TEST_CASE("spectral radius and abscissa") {
  const auto e = eigendecompose(diag({Complex(0.5, 2.0), -3.0}));
  CHECK(std::abs(spectral_radius(e) - 3.0) < 1e-14);
  CHECK(std::abs(spectral_abscissa(e) - 0.5) < 1e-14);
}
