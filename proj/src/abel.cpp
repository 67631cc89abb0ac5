#include "abelpow/abel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace abelpow::abel {

using linalg::Index;

AbelParameter::AbelParameter(double alpha) : alpha_(alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
          "alpha must lie strictly inside (0, 1), got " + std::to_string(alpha));
}

ComplexMatrix abel_average(const ComplexMatrix& t, AbelParameter p) {
  linalg::require_square(t, "abel_average: T");
  const double a = p.value();
  const Index n = t.rows();
  const ComplexMatrix shifted = linalg::identity(n) - a * t;
  try {
    return (1.0 - a) * linalg::solve_linear(shifted, linalg::identity(n));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      fail(ErrorCode::ResolventPole, "1/alpha = " + std::to_string(1.0 / a) +
                                         " is numerically in the spectrum of T");
    }
    throw;
  }
}

ComplexMatrix abel_series_partial(const ComplexMatrix& t, AbelParameter p, std::uint64_t n) {
  linalg::require_square(t, "abel_series_partial: T");
  linalg::require_finite(t, "abel_series_partial: T");
  const double a = p.value();
  const Index dim = t.rows();
  const ComplexMatrix scaled = a * t;
  ComplexMatrix acc = linalg::identity(dim);
  for (std::uint64_t k = 0; k < n; ++k) {
    acc = linalg::identity(dim) + scaled * acc;
    if (!linalg::all_finite(acc)) fail(ErrorCode::Overflow, "Abel partial sum overflowed");
  }
  return (1.0 - a) * acc;
}

ComplexMatrix cesaro_average(const ComplexMatrix& t, std::uint64_t n) {
  linalg::require_square(t, "cesaro_average: T");
  linalg::require_finite(t, "cesaro_average: T");
  require(n >= 1, "cesaro_average: N must be at least 1");
  const Index dim = t.rows();
  // Invariant: sum = sum_{j<m} T^j and power = T^m for the prefix m of n's bits.
  ComplexMatrix sum = linalg::identity(dim);
  ComplexMatrix power = t;
  const int top = std::bit_width(n) - 1;
  for (int bit = top - 1; bit >= 0; --bit) {
    sum += power * sum;
    power = power * power;
    if ((n >> bit) & 1u) {
      sum += power;
      power = power * t;
    }
    if (!linalg::all_finite(sum) || !linalg::all_finite(power)) {
      fail(ErrorCode::Overflow, "Cesaro partial sum overflowed");
    }
  }
  return sum / static_cast<double>(n);
}

ConvergenceReport power_iterate(const ComplexMatrix& m, const PowerIterationOptions& opts) {
  linalg::require_square(m, "power_iterate: M");
  linalg::require_finite(m, "power_iterate: M");
  require(opts.tol > 0.0, "power_iterate: tol must be positive");
  require(opts.max_doublings >= 1 && opts.max_doublings <= 63, "power_iterate: max_doublings out of range");

  ConvergenceReport report;
  ComplexMatrix current = m;
  std::uint64_t exponent = 1;
  for (int k = 0; k < opts.max_doublings; ++k) {
    const double scale = linalg::operator_norm(current);
    if (scale > opts.blow_up) {
      report.steps = exponent;
      report.divergence_reason = DivergenceReason::blow_up;
      return report;
    }
    ComplexMatrix next = current * current;
    if (!linalg::all_finite(next)) {
      report.steps = exponent;
      report.divergence_reason = DivergenceReason::blow_up;
      return report;
    }
    const double distance = linalg::operator_norm(next - current);
    report.history.push_back({exponent, distance});
    const double budget = opts.tol * std::max(1.0, scale);
    if (distance <= budget) {
      // next = current^2, so the idempotency defect of current is distance.
      const double fixed_defect = linalg::operator_norm(m * current - current);
      if (distance <= 10.0 * budget && fixed_defect <= 10.0 * budget) {
        report.converged = true;
        report.limit = std::move(current);
        report.steps = exponent;
        return report;
      }
    }
    current = std::move(next);
    exponent <<= 1;
  }
  report.steps = exponent;
  report.divergence_reason = linalg::operator_norm(current) > opts.blow_up ? DivergenceReason::blow_up
                                                                           : DivergenceReason::no_cauchy;
  return report;
}

RieszProjection riesz_projection_at_one(const ComplexMatrix& t, double rank_tol) {
  linalg::require_square(t, "riesz_projection_at_one: T");
  const Index n = t.rows();
  const ComplexMatrix defect = linalg::identity(n) - t;
  RieszProjection out;
  const double scale = 1.0 + linalg::operator_norm(t);
  out.kernel = linalg::kernel_basis(defect, rank_tol, scale);
  out.image = linalg::image_basis(defect, rank_tol, scale);
  const Index k = out.kernel.dimension();
  const Index r = out.image.dimension();
  if (k + r != n) {
    fail(ErrorCode::DecompositionFails, "dim Ker(I-T) + dim Im(I-T) = " + std::to_string(k) + " + " +
                                            std::to_string(r) + " != " + std::to_string(n));
  }
  if (n == 0) return out;

  ComplexMatrix stacked(n, n);
  stacked << out.kernel.vectors, out.image.vectors;
  const auto sigma = linalg::singular_values(stacked);
  if (sigma.back() <= rank_tol * sigma.front()) {
    fail(ErrorCode::DecompositionFails, "Ker(I-T) and Im(I-T) intersect: smallest singular value of [K V] is " +
                                            std::to_string(sigma.back()));
  }
  ComplexMatrix selector = ComplexMatrix::Zero(n, n);
  selector.topLeftCorner(k, k).setIdentity();
  ComplexMatrix inverse;
  try {
    inverse = linalg::solve_linear(stacked, linalg::identity(n));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) fail(ErrorCode::DecompositionFails, e.what());
    throw;
  }
  out.matrix = stacked * selector * inverse;
  out.idempotency_defect = linalg::operator_norm(out.matrix * out.matrix - out.matrix);
  return out;
}

Complex spectral_map(Complex zeta, AbelParameter p) {
  const double a = p.value();
  const Complex denominator = 1.0 - a * zeta;
  if (std::abs(denominator) <= 1e-14 * std::max(1.0, std::abs(a * zeta))) {
    fail(ErrorCode::PoleHit, "zeta is at the pole 1/alpha");
  }
  return (1.0 - a) / denominator;
}

bool in_omega_alpha(Complex zeta, AbelParameter p) {
  const double a = p.value();
  return std::abs(a * zeta - 1.0) > 1.0 - a;
}

bool in_half_plane_pi(Complex zeta, double slack) {
  require(slack >= 0.0, "in_half_plane_pi: slack must be non-negative");
  return zeta.real() <= 1.0 + slack;
}

std::vector<AlphaSweepEntry> abel_alpha_sweep(const ComplexMatrix& t, const std::vector<double>& alphas) {
  std::vector<AlphaSweepEntry> out;
  out.reserve(alphas.size());
  ComplexMatrix previous;
  for (double alpha : alphas) {
    const ComplexMatrix current = abel_average(t, AbelParameter(alpha));
    AlphaSweepEntry entry{alpha, 0.0, linalg::operator_norm(current)};
    if (!out.empty()) entry.step = linalg::operator_norm(current - previous);
    out.push_back(entry);
    previous = current;
  }
  return out;
}

}  // namespace abelpow::abel
