#include "abelpow/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace abelpow::certify {

std::vector<Complex> cluster_eigenvalues(const std::vector<Complex>& values, double radius) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= radius) parent[find(j)] = find(i);
    }
  }
  std::vector<Complex> sums(n, Complex{});
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    sums[root] += values[i];
    ++counts[root];
  }
  std::vector<Complex> centers;
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] > 0) centers.push_back(sums[i] / static_cast<double>(counts[i]));
  }
  std::sort(centers.begin(), centers.end(), linalg::eigen_order);
  return centers;
}

namespace {

bool semisimple_at(const ComplexMatrix& t, Complex zeta, double rank_tol, Index& rank1, Index& rank2) {
  const ComplexMatrix shifted = zeta * linalg::identity(t.rows()) - t;
  const double scale = std::abs(zeta) + linalg::operator_norm(t);
  rank1 = linalg::numerical_rank(shifted, rank_tol, scale);
  rank2 = linalg::numerical_rank(shifted * shifted, rank_tol, scale * scale);
  return rank1 == rank2;
}

Witness real_witness(std::string kind, double value) { return {std::move(kind), Complex(value, 0.0)}; }

}  // namespace

ConditionIICertificate check_condition_ii(const ComplexMatrix& t, const Tolerances& tol) {
  linalg::require_square(t, "check_condition_ii: T");
  ConditionIICertificate cert;
  const Index n = t.rows();
  cert.spectrum = linalg::eigendecompose(t).values;
  const auto centers = cluster_eigenvalues(cert.spectrum, tol.cluster_radius);
  cert.max_real_eigenvalue = centers.empty() ? Complex{} : centers.front();
  const double slack = tol.spectral_slack * std::max(1.0, linalg::operator_norm(t));
  const bool escapes = !centers.empty() && !abel::in_half_plane_pi(cert.max_real_eigenvalue, slack);

  const bool semisimple = semisimple_at(t, Complex(1.0, 0.0), tol.rank_tol, cert.rank_defect, cert.rank_defect_squared);

  bool direct_sum = true;
  try {
    cert.projection = abel::riesz_projection_at_one(t, tol.rank_tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DecompositionFails) throw;
    direct_sum = false;
  }

  if (escapes) {
    cert.verdict = ConditionIIVerdict::spectrum_escapes;
    cert.witnesses.push_back({"max_real_eigenvalue", cert.max_real_eigenvalue});
  }
  if (!semisimple) {
    if (!escapes) cert.verdict = ConditionIIVerdict::decomposition_fails;
    cert.witnesses.push_back(real_witness("rank(I-T)", static_cast<double>(cert.rank_defect)));
    cert.witnesses.push_back(real_witness("rank((I-T)^2)", static_cast<double>(cert.rank_defect_squared)));
  }
  if (!direct_sum) {
    if (!escapes) cert.verdict = ConditionIIVerdict::decomposition_fails;
    cert.witnesses.push_back(real_witness("kernel_image_not_complementary", static_cast<double>(n)));
  }
  return cert;
}

ConditionICertificate check_condition_i(const ComplexMatrix& t, const std::vector<abel::AbelParameter>& alphas,
                                        const Tolerances& tol) {
  linalg::require_square(t, "check_condition_i: T");
  require(!alphas.empty(), "check_condition_i: at least one alpha is required");
  ConditionICertificate cert;
  bool all_converged = true;
  for (const auto& p : alphas) {
    AlphaEvidence evidence;
    evidence.alpha = p.value();
    try {
      evidence.report = abel::power_iterate(abel::abel_average(t, p), tol.power_options());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResolventPole && e.code() != ErrorCode::Overflow) throw;
      evidence.resolvent_pole = e.code() == ErrorCode::ResolventPole;
      evidence.report.divergence_reason = abel::DivergenceReason::blow_up;
    }
    if (evidence.resolvent_pole) {
      cert.witnesses.push_back(real_witness("resolvent_pole_alpha", p.value()));
    } else if (!evidence.report.converged) {
      cert.witnesses.push_back(real_witness("divergence_exponent", static_cast<double>(evidence.report.steps)));
    }
    all_converged = all_converged && evidence.report.converged;
    cert.per_alpha.push_back(std::move(evidence));
  }

  if (!all_converged) {
    cert.verdict = ConditionIVerdict::diverged;
    return cert;
  }

  bool agree = true;
  for (std::size_t i = 0; i < cert.per_alpha.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.per_alpha.size(); ++j) {
      const ComplexMatrix& li = *cert.per_alpha[i].report.limit;
      const ComplexMatrix& lj = *cert.per_alpha[j].report.limit;
      const double gap = linalg::operator_norm(li - lj);
      const double scale = std::max({1.0, linalg::operator_norm(li), linalg::operator_norm(lj)});
      cert.max_limit_disagreement = std::max(cert.max_limit_disagreement, gap);
      if (gap > 10.0 * tol.power_tol * scale) agree = false;
    }
  }
  if (!agree) {
    cert.verdict = ConditionIVerdict::diverged;
    cert.witnesses.push_back(real_witness("limit_disagreement", cert.max_limit_disagreement));
    return cert;
  }
  cert.verdict = ConditionIVerdict::converged_all;
  cert.limit = cert.per_alpha.front().report.limit;
  return cert;
}

EquivalenceReport verify_theorem_2_1(const ComplexMatrix& t, const std::vector<abel::AbelParameter>& alphas,
                                     const Tolerances& tol) {
  EquivalenceReport report;
  report.tolerances_used = tol;
  report.condition_ii = check_condition_ii(t, tol);
  if (alphas.empty()) {
    report.condition_i.verdict = ConditionIVerdict::skipped;
    return report;
  }
  report.condition_i = check_condition_i(t, alphas, tol);
  report.agree = (report.condition_i.verdict == ConditionIVerdict::converged_all) ==
                 (report.condition_ii.verdict == ConditionIIVerdict::holds);
  return report;
}

GrowthReport check_growth_1_3(const ComplexMatrix& t, std::uint64_t n_max, const Tolerances& tol) {
  linalg::require_square(t, "check_growth_1_3: T");
  linalg::require_finite(t, "check_growth_1_3: T");
  require(n_max >= 4, "check_growth_1_3: n_max must be at least 4");
  GrowthReport report;

  ComplexMatrix power = t;
  for (std::uint64_t n = 1; n <= n_max; n *= 2) {
    if (!linalg::all_finite(power)) {
      report.overflow = true;
      report.witnesses.push_back(real_witness("overflow_at_n", static_cast<double>(n)));
      break;
    }
    report.samples.push_back({n, linalg::operator_norm(power) / static_cast<double>(n)});
    if (n > n_max / 2) break;
    power = power * power;
  }
  if (!report.overflow && report.samples.size() >= 2) {
    const double first = report.samples.front().value;
    const double last = report.samples.back().value;
    const double previous = report.samples[report.samples.size() - 2].value;
    report.heuristic_holds = last <= previous && (last == 0.0 || last < 0.1 * first);
  }

  const auto centers = cluster_eigenvalues(linalg::eigendecompose(t).values, tol.cluster_radius);
  bool exact = true;
  for (const auto& c : centers) {
    const double modulus = std::abs(c);
    if (modulus > 1.0 + tol.spectral_slack) {
      exact = false;
      report.witnesses.push_back({"eigenvalue_outside_unit_disk", c});
    } else if (modulus >= 1.0 - tol.spectral_slack) {
      Index r1 = 0, r2 = 0;
      if (!semisimple_at(t, c, tol.rank_tol, r1, r2)) {
        exact = false;
        report.witnesses.push_back({"non_semisimple_unimodular_eigenvalue", c});
      }
    }
  }
  report.exact_holds = exact;
  return report;
}

SupEstimate cesaro_sup_estimate(const ComplexMatrix& t, std::uint64_t n_max) {
  linalg::require_square(t, "cesaro_sup_estimate: T");
  linalg::require_finite(t, "cesaro_sup_estimate: T");
  require(n_max >= 1, "cesaro_sup_estimate: N_max must be at least 1");
  SupEstimate est;
  const Index dim = t.rows();
  ComplexMatrix power = linalg::identity(dim);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    sum += power;
    if (!linalg::all_finite(sum)) {
      est.overflow = true;
      est.sup = std::numeric_limits<double>::infinity();
      est.argmax_n = n;
      return est;
    }
    const double value = linalg::operator_norm(sum) / static_cast<double>(n);
    if (value > est.sup || n == 1) {
      est.sup = value;
      est.argmax_n = n;
    }
    power = power * t;
  }
  return est;
}

SupEstimate abel_partial_sup_estimate(const ComplexMatrix& t, const std::vector<double>& alpha_grid,
                                      std::uint64_t n_max) {
  linalg::require_square(t, "abel_partial_sup_estimate: T");
  linalg::require_finite(t, "abel_partial_sup_estimate: T");
  require(!alpha_grid.empty(), "abel_partial_sup_estimate: alpha grid is empty");
  SupEstimate est;
  const Index dim = t.rows();
  bool first = true;
  for (double a : alpha_grid) {
    const double alpha = abel::AbelParameter(a).value();
    const ComplexMatrix scaled = alpha * t;
    ComplexMatrix term = linalg::identity(dim);
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      sum += term;
      if (!linalg::all_finite(sum)) {
        est.overflow = true;
        est.sup = std::numeric_limits<double>::infinity();
        est.argmax_n = n;
        est.argmax_alpha = alpha;
        return est;
      }
      const double value = (1.0 - alpha) * linalg::operator_norm(sum);
      if (first || value > est.sup) {
        est.sup = value;
        est.argmax_n = n;
        est.argmax_alpha = alpha;
        first = false;
      }
      term = scaled * term;
    }
  }
  return est;
}

double numerical_range_real_bound(const ComplexMatrix& t) { return linalg::hermitian_part_max_eig(t); }

TransferReport kernel_image_transfer_check(const ComplexMatrix& t, abel::AbelParameter p, const Tolerances& tol) {
  linalg::require_square(t, "kernel_image_transfer_check: T");
  const Index n = t.rows();
  const ComplexMatrix average = abel::abel_average(t, p);
  const ComplexMatrix defect_t = linalg::identity(n) - t;
  const ComplexMatrix defect_a = linalg::identity(n) - average;
  TransferReport report;
  const double scale_t = 1.0 + linalg::operator_norm(t);
  const double scale_a = 1.0 + linalg::operator_norm(average);
  const auto kernel_t = linalg::kernel_basis(defect_t, tol.rank_tol, scale_t);
  const auto kernel_a = linalg::kernel_basis(defect_a, tol.rank_tol, scale_a);
  const auto image_t = linalg::image_basis(defect_t, tol.rank_tol, scale_t);
  const auto image_a = linalg::image_basis(defect_a, tol.rank_tol, scale_a);
  report.kernel_angle = linalg::max_principal_angle(kernel_t, kernel_a);
  report.image_angle = linalg::max_principal_angle(image_t, image_a);
  report.kernel_dimension = kernel_t.dimension();
  report.image_dimension = image_t.dimension();
  report.pass = report.kernel_angle <= 1e-7 && report.image_angle <= 1e-7;
  return report;
}

}  // namespace abelpow::certify
