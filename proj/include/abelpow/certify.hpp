#pragma once

// Checkable certificates for power convergence of Abel averages:
//   (i)  A_alpha^n converges for every tested alpha;
//   (ii) sigma(T) lies in Re z <= 1 and Ker(I-T) (+) Im(I-T) is the whole space.
// Plus the finite-sweep growth and boundedness diagnostics.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abelpow/abel.hpp"

namespace abelpow::certify {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::Index;

struct Tolerances {
  /// Power-iteration Cauchy tolerance (relative to max(1, ||M^{2^k}||)).
  double power_tol = 1e-10;
  /// Relative numerical-rank threshold for the kernel/image and semisimplicity tests.
  double rank_tol = 1e-9;
  /// Eigenvalues count as inside Re z <= 1 up to spectral_slack * max(1, ||T||).
  double spectral_slack = 1e-6;
  /// Eigenvalues closer than this are one cluster (a split defective eigenvalue).
  double cluster_radius = 1e-4;
  double blow_up = 1e8;
  int max_doublings = 60;

  abel::PowerIterationOptions power_options() const { return {power_tol, max_doublings, blow_up}; }
};

struct Witness {
  std::string kind;
  Complex value;
};

enum class ConditionIVerdict { converged_all, diverged, skipped };
enum class ConditionIIVerdict { holds, spectrum_escapes, decomposition_fails };

constexpr std::string_view to_string(ConditionIVerdict v) {
  switch (v) {
    case ConditionIVerdict::converged_all: return "converged_all";
    case ConditionIVerdict::diverged: return "diverged";
    case ConditionIVerdict::skipped: return "skipped";
  }
  return "?";
}

constexpr std::string_view to_string(ConditionIIVerdict v) {
  switch (v) {
    case ConditionIIVerdict::holds: return "holds";
    case ConditionIIVerdict::spectrum_escapes: return "spectrum_escapes";
    case ConditionIIVerdict::decomposition_fails: return "decomposition_fails";
  }
  return "?";
}

struct AlphaEvidence {
  double alpha = 0.0;
  bool resolvent_pole = false;
  abel::ConvergenceReport report;
};

struct ConditionICertificate {
  ConditionIVerdict verdict = ConditionIVerdict::skipped;
  std::vector<AlphaEvidence> per_alpha;
  /// Common limit (first alpha's) when converged_all.
  std::optional<ComplexMatrix> limit;
  double max_limit_disagreement = 0.0;
  std::vector<Witness> witnesses;
};

struct ConditionIICertificate {
  ConditionIIVerdict verdict = ConditionIIVerdict::holds;
  std::vector<Complex> spectrum;
  Complex max_real_eigenvalue;
  Index rank_defect = 0;          // rank(I - T)
  Index rank_defect_squared = 0;  // rank((I - T)^2)
  /// Present when the direct-sum stack test succeeded.
  std::optional<abel::RieszProjection> projection;
  std::vector<Witness> witnesses;
};

struct EquivalenceReport {
  ConditionICertificate condition_i;
  ConditionIICertificate condition_ii;
  /// Empty when condition (i) was skipped.
  std::optional<bool> agree;
  Tolerances tolerances_used;
};

/// Single-linkage clusters of nearby eigenvalues; returns cluster means in
/// eigen_order. A defective eigenvalue splits by O(eps^{1/k}) and comes back
/// as one cluster.
std::vector<Complex> cluster_eigenvalues(const std::vector<Complex>& values, double radius);

ConditionIICertificate check_condition_ii(const ComplexMatrix& t, const Tolerances& tol = {});

ConditionICertificate check_condition_i(const ComplexMatrix& t, const std::vector<abel::AbelParameter>& alphas,
                                        const Tolerances& tol = {});

/// Both sides and whether their verdicts coincide. Disagreement means a
/// tolerance failure, not a counterexample.
EquivalenceReport verify_theorem_2_1(const ComplexMatrix& t, const std::vector<abel::AbelParameter>& alphas,
                                     const Tolerances& tol = {});

struct GrowthSample {
  std::uint64_t n = 0;
  double value = 0.0;  // ||T^n|| / n
};

struct GrowthReport {
  std::vector<GrowthSample> samples;
  /// Decreasing tail and final value below a tenth of the first.
  bool heuristic_holds = false;
  /// Spectral radius <= 1 and every unimodular eigenvalue semisimple.
  bool exact_holds = false;
  bool overflow = false;
  std::vector<Witness> witnesses;
};

/// ||T^n||/n at n = 1, 2, 4, ..., 2^floor(log2 n_max), and the exact spectral
/// criterion for ||T^n/n|| -> 0.
GrowthReport check_growth_1_3(const ComplexMatrix& t, std::uint64_t n_max, const Tolerances& tol = {});

/// A finite sweep; it cannot prove boundedness.
struct SupEstimate {
  double sup = 0.0;
  std::uint64_t argmax_n = 0;
  double argmax_alpha = 0.0;
  bool overflow = false;
  static constexpr std::string_view note = "finite-sweep diagnostic; not a boundedness proof";
};

/// sup_{1<=N<=N_max} ||N^{-1} sum_{n<N} T^n||.
SupEstimate cesaro_sup_estimate(const ComplexMatrix& t, std::uint64_t n_max);

/// sup over alpha in the grid and 0<=N<=N_max of ||(1-alpha) sum_{k<=N} alpha^k T^k||.
SupEstimate abel_partial_sup_estimate(const ComplexMatrix& t, const std::vector<double>& alpha_grid,
                                      std::uint64_t n_max);

/// sup Re W(T).
double numerical_range_real_bound(const ComplexMatrix& t);

struct TransferReport {
  double kernel_angle = 0.0;
  double image_angle = 0.0;
  Index kernel_dimension = 0;
  Index image_dimension = 0;
  bool pass = false;
};

/// Principal angles between Ker/Im of (I - A_alpha) and of (I - T). Passes
/// when both are at most 1e-7.
TransferReport kernel_image_transfer_check(const ComplexMatrix& t, abel::AbelParameter p,
                                           const Tolerances& tol = {});

}  // namespace abelpow::certify
