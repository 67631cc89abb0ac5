#include <doctest.h>

#include <cmath>

#include "abelpow/abel.hpp"
#include "abelpow/instances.hpp"
#include "support.hpp"

using namespace abelpow;
using namespace abelpow::abel;
using namespace testing;
using linalg::identity;

namespace {

// Scalar reference for f_alpha, written out independently of spectral_map.
Complex f_ref(Complex z, double a) { return (1.0 - a) / (1.0 - a * z); }

}  // namespace

TEST_CASE("AbelParameter rejects the closed endpoints") {
  CHECK(AbelParameter(0.25).value() == 0.25);
  for (double bad : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
    CHECK(code_of([&] { AbelParameter{bad}; }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("abel_average") {
  const AbelParameter half(0.5);
  CHECK(norm2(abel_average(identity(3), AbelParameter(0.37)) - identity(3)) < 1e-15);
  CHECK(norm2(abel_average(ComplexMatrix::Zero(2, 2), half) - 0.5 * identity(2)) < 1e-15);
  CHECK(norm2(abel_average(diag({1.0, 0.5}), half) - diag({1.0, 2.0 / 3.0})) < 1e-15);
  CHECK(code_of([&] { abel_average(diag({2.0, 0.0}), half); }) == ErrorCode::ResolventPole);

  SUBCASE("resolvent identities") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      const ComplexMatrix t = gaussian(rng, 1 + trial % 12);
      for (double a : {0.1, 0.5, 0.9}) {
        const ComplexMatrix avg = abel_average(t, AbelParameter(a));
        const ComplexMatrix lhs = identity(t.rows()) - a * t;
        const double scale = std::max(1.0, norm2(t)) * std::max(1.0, norm2(avg));
        CHECK(norm2(lhs * avg - (1.0 - a) * identity(t.rows())) <= 1e-10 * scale);
        CHECK(norm2(avg * lhs - (1.0 - a) * identity(t.rows())) <= 1e-10 * scale);
      }
    }
  }

  SUBCASE("spectral mapping with multiplicity") {
    std::mt19937_64 rng(23);
    for (Index n : {3, 8, 16, 32}) {
      const ComplexMatrix t = gaussian(rng, n, 0.5);
      const auto zs = linalg::eigendecompose(t).values;
      for (double a : {0.1, 0.5, 0.9}) {
        auto mapped = linalg::eigendecompose(abel_average(t, AbelParameter(a))).values;
        // Greedy matching consumes each eigenvalue of A_alpha once.
        for (const auto& z : zs) {
          const Complex target = f_ref(z, a);
          auto best = mapped.begin();
          for (auto it = mapped.begin(); it != mapped.end(); ++it) {
            if (std::abs(*it - target) < std::abs(*best - target)) best = it;
          }
          CHECK(std::abs(*best - target) <= 1e-8);
          mapped.erase(best);
        }
      }
    }
  }
}

TEST_CASE("abel_series_partial") {
  const AbelParameter half(0.5);
  CHECK(norm2(abel_series_partial(ComplexMatrix::Zero(2, 2), half, 10) - 0.5 * identity(2)) < 1e-15);
  CHECK(norm2(abel_series_partial(identity(2), half, 3) - 0.9375 * identity(2)) < 1e-15);
  CHECK(norm2(abel_series_partial(diag({0.5}), half, 200) - diag({2.0 / 3.0})) < 1e-15);
  CHECK(code_of([&] { abel_series_partial(diag({1e200}), AbelParameter(0.9), 5); }) == ErrorCode::Overflow);

  SUBCASE("geometric approach to the resolvent form") {
    std::mt19937_64 rng(29);
    ComplexMatrix t = gaussian(rng, 6);
    const auto eig = linalg::eigendecompose(t);
    t *= 1.5 / linalg::spectral_radius(eig);
    const double a = 0.5;
    const double rho = a * 1.5;
    const ComplexMatrix target = abel_average(t, AbelParameter(a));
    double previous = norm2(abel_series_partial(t, AbelParameter(a), 40) - target);
    for (std::uint64_t n = 41; n <= 60; ++n) {
      const double d = norm2(abel_series_partial(t, AbelParameter(a), n) - target);
      CHECK(d / previous <= rho + 0.05);
      previous = d;
    }
  }
}

TEST_CASE("cesaro_average") {
  CHECK(norm2(cesaro_average(identity(2), 7) - identity(2)) < 1e-15);
  CHECK(norm2(cesaro_average(-identity(2), 2)) < 1e-15);
  CHECK(norm2(cesaro_average(diag({1.0, 0.0}), 4) - diag({1.0, 0.25})) < 1e-15);
  CHECK(code_of([] { cesaro_average(identity(2), 0); }) == ErrorCode::InvalidArgument);

  SUBCASE("binary splitting matches direct summation") {
    std::mt19937_64 rng(31);
    for (std::uint64_t n : {1u, 2u, 3u, 5u, 16u, 37u, 100u, 255u}) {
      ComplexMatrix t = gaussian(rng, 4);
      t /= norm2(t);
      ComplexMatrix sum = ComplexMatrix::Zero(4, 4), power = identity(4);
      for (std::uint64_t k = 0; k < n; ++k) {
        sum += power;
        power = power * t;
      }
      CHECK(norm2(cesaro_average(t, n) - sum / static_cast<double>(n)) <= 1e-13);
    }
  }
}

TEST_CASE("power_iterate") {
  SUBCASE("geometric decay") {
    const auto r = power_iterate(diag({1.0, 0.5}));
    REQUIRE(r.converged);
    CHECK(norm2(*r.limit - diag({1.0, 0.0})) < 1e-10);
    CHECK_FALSE(r.divergence_reason.has_value());
    CHECK_FALSE(r.history.empty());
  }
  SUBCASE("Jordan block average blows up") {
    const auto r = power_iterate(abel_average(jordan2(), AbelParameter(0.5)));
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.limit.has_value());
    REQUIRE(r.divergence_reason.has_value());
    CHECK(*r.divergence_reason == DivergenceReason::blow_up);
  }
  SUBCASE("zero matrix") {
    const auto r = power_iterate(ComplexMatrix::Zero(3, 3));
    REQUIRE(r.converged);
    CHECK(r.steps == 1);
    CHECK(norm2(*r.limit) == 0.0);
  }
  SUBCASE("unimodular rotation never settles") {
    CHECK_FALSE(power_iterate(diag({Complex(std::cos(1.0), std::sin(1.0))})).converged);
  }
  SUBCASE("permutation exhausts the doublings") {
    // P^2 = I exactly, so increments vanish but M L = P != L.
    const auto r = power_iterate(rows({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK_FALSE(r.converged);
    CHECK(*r.divergence_reason == DivergenceReason::no_cauchy);
  }
  SUBCASE("reflection squares to a projection but is not its own limit") {
    // -1 squares to 1; M L = -L keeps this from passing as converged.
    const auto r = power_iterate(diag({-1.0, 1.0}));
    CHECK_FALSE(r.converged);
  }
  SUBCASE("limit is an idempotent fixed by M") {
    std::mt19937_64 rng(41);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto inst = instances::generate_instance(seed, instances::InstanceKind::semisimple_at_one);
      const ComplexMatrix m = abel_average(inst.t, AbelParameter(0.5));
      const auto r = power_iterate(m);
      REQUIRE(r.converged);
      const ComplexMatrix& l = *r.limit;
      const double scale = std::max(1.0, norm2(l));
      CHECK(norm2(l * l - l) <= 10 * 1e-10 * scale);
      CHECK(norm2(m * l - l) <= 10 * 1e-10 * scale);
    }
  }
  CHECK(code_of([] { power_iterate(ComplexMatrix::Ones(2, 3)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("riesz_projection_at_one") {
  const double tol = 1e-9;
  const auto e = riesz_projection_at_one(diag({1.0, 0.3, -2.0}), tol);
  CHECK(norm2(e.matrix - diag({1.0, 0.0, 0.0})) < 1e-14);
  CHECK(e.kernel.dimension() == 1);
  CHECK(e.image.dimension() == 2);
  CHECK(norm2(riesz_projection_at_one(identity(4), tol).matrix - identity(4)) < 1e-14);
  CHECK(code_of([&] { riesz_projection_at_one(jordan2(), tol); }) == ErrorCode::DecompositionFails);

  SUBCASE("no eigenvalue at 1 gives the zero projection") {
    CHECK(norm2(riesz_projection_at_one(diag({0.5, -1.0}), tol).matrix) == 0.0);
  }
  SUBCASE("generated instances reproduce the constructed projection") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const auto inst = instances::generate_instance(seed, instances::InstanceKind::semisimple_at_one);
      const auto p = riesz_projection_at_one(inst.t, tol);
      const double scale = std::max(1.0, norm2(inst.projection));
      CHECK(norm2(p.matrix - inst.projection) <= 1e-8 * scale);
      CHECK(p.idempotency_defect <= 1e-8 * scale);
      if (p.kernel.dimension() > 0) CHECK(norm2(p.matrix * p.kernel.vectors - p.kernel.vectors) <= 1e-8 * scale);
      if (p.image.dimension() > 0) CHECK(norm2(p.matrix * p.image.vectors) <= 1e-8 * scale);
    }
  }
  SUBCASE("Jordan block hidden by a similarity still fails") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto inst = instances::generate_instance(seed, instances::InstanceKind::jordan_at_one);
      CHECK(code_of([&] { riesz_projection_at_one(inst.t, tol); }) == ErrorCode::DecompositionFails);
    }
  }
}

TEST_CASE("spectral_map") {
  CHECK(std::abs(spectral_map(1.0, AbelParameter(0.3)) - 1.0) < 1e-15);
  CHECK(std::abs(spectral_map(0.0, AbelParameter(0.5)) - 0.5) < 1e-15);
  CHECK(std::abs(spectral_map(-1.0, AbelParameter(0.5)) - 1.0 / 3.0) < 1e-15);
  CHECK(code_of([] { spectral_map(2.0, AbelParameter(0.5)); }) == ErrorCode::PoleHit);

  SUBCASE("the half-plane lands in the disk |w - 1/2| <= 1/2") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> re(-50.0, 1.0), im(-50.0, 50.0), al(1e-6, 1.0 - 1e-6);
    for (int k = 0; k < 10000; ++k) {
      const Complex z(re(rng), im(rng));
      const AbelParameter p(al(rng));
      CHECK(std::abs(spectral_map(z, p) - 0.5) <= 0.5 + 1e-12);
    }
  }
  SUBCASE("Omega_alpha is where |f_alpha| < 1") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> c(-4.0, 4.0), al(0.05, 0.95);
    for (int k = 0; k < 2000; ++k) {
      const Complex z(c(rng), c(rng));
      const double a = al(rng);
      const double m = std::abs(f_ref(z, a));
      if (std::abs(m - 1.0) > 1e-9) CHECK(in_omega_alpha(z, AbelParameter(a)) == (m < 1.0));
    }
  }
}

TEST_CASE("in_omega_alpha and in_half_plane_pi") {
  CHECK_FALSE(in_omega_alpha(1.0, AbelParameter(0.5)));
  CHECK(in_omega_alpha(-1.0, AbelParameter(0.5)));
  CHECK(in_omega_alpha(2.0, AbelParameter(0.9)));
  CHECK(in_half_plane_pi(1.0));
  CHECK(in_half_plane_pi(Complex(1.0, 1e6)));
  CHECK_FALSE(in_half_plane_pi(1.001, 0.0));
  CHECK(in_half_plane_pi(1.001, 0.01));
}

TEST_CASE("abel_alpha_sweep") {
  const auto sweep = abel_alpha_sweep(diag({1.0, 0.5}), {0.5, 0.9, 0.99});
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].step == 0.0);
  // Second diagonal entry 0.5/(1 - 0.5 a) at a = 0.5 and 0.9.
  CHECK(std::abs(sweep[1].step - (0.5 / 0.75 - 0.1 / 0.55)) < 1e-14);
  CHECK(sweep[2].step < sweep[1].step);
  CHECK(std::abs(sweep[2].norm - 1.0) < 1e-14);
}
