#pragma once

// Abel and Cesaro averages of a matrix, powers of the Abel average, and the
// projection onto Ker(I - T) along Im(I - T).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "abelpow/linalg.hpp"

namespace abelpow::abel {

using linalg::Complex;
using linalg::ComplexMatrix;

/// Abel parameter alpha, strictly inside (0, 1).
class AbelParameter {
 public:
  explicit AbelParameter(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

struct RieszProjection {
  ComplexMatrix matrix;
  linalg::SubspaceBasis kernel;
  linalg::SubspaceBasis image;
  double idempotency_defect = 0.0;
};

enum class DivergenceReason { blow_up, no_cauchy };

constexpr std::string_view to_string(DivergenceReason r) {
  return r == DivergenceReason::blow_up ? "blow_up" : "no_cauchy";
}

struct HistoryEntry {
  std::uint64_t exponent = 0;  // 2^k
  double distance = 0.0;       // ||M^{2^{k+1}} - M^{2^k}||
};

struct ConvergenceReport {
  bool converged = false;
  std::optional<ComplexMatrix> limit;
  std::uint64_t steps = 0;
  std::vector<HistoryEntry> history;
  std::optional<DivergenceReason> divergence_reason;
};

struct PowerIterationOptions {
  /// Cauchy tolerance, scaled by max(1, ||M^{2^k}||).
  double tol = 1e-10;
  int max_doublings = 60;
  double blow_up = 1e8;
};

/// A_alpha = (1 - alpha)(I - alpha T)^{-1}. Throws ResolventPole when 1/alpha
/// is numerically in the spectrum.
ComplexMatrix abel_average(const ComplexMatrix& t, AbelParameter p);

/// (1 - alpha) sum_{k=0}^{N} alpha^k T^k, Horner accumulation.
ComplexMatrix abel_series_partial(const ComplexMatrix& t, AbelParameter p, std::uint64_t n);

/// N^{-1} sum_{n=0}^{N-1} T^n, by binary splitting of N (O(log N) products).
ComplexMatrix cesaro_average(const ComplexMatrix& t, std::uint64_t n);

/// Repeated squaring M, M^2, M^4, ... until the Cauchy increment is below
/// tol and the candidate limit L is idempotent with M L = L. Divergence is
/// an in-band result.
ConvergenceReport power_iterate(const ComplexMatrix& m, const PowerIterationOptions& opts = {});

/// Projection onto Ker(I - T) along Im(I - T), assembled from the two bases.
/// Throws DecompositionFails when the sum is not a direct decomposition of
/// the whole space.
RieszProjection riesz_projection_at_one(const ComplexMatrix& t, double rank_tol);

/// f_alpha(z) = (1 - alpha)/(1 - alpha z). Throws PoleHit at z = 1/alpha.
Complex spectral_map(Complex zeta, AbelParameter p);

/// |alpha z - 1| > 1 - alpha.
bool in_omega_alpha(Complex zeta, AbelParameter p);

/// Re z <= 1 + slack.
bool in_half_plane_pi(Complex zeta, double slack = 0.0);

struct AlphaSweepEntry {
  double alpha = 0.0;
  /// ||A_alpha - A_previous||; zero for the first entry.
  double step = 0.0;
  double norm = 0.0;
};

/// Diagnostic for the alpha -> 1^- behaviour of A_alpha. No verdict: a finite
/// sweep only shows the trend.
std::vector<AlphaSweepEntry> abel_alpha_sweep(const ComplexMatrix& t, const std::vector<double>& alphas);

}  // namespace abelpow::abel
