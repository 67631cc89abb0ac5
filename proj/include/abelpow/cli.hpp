#pragma once

// Command layer behind the abelpow executable. Each cmd_* returns the
// "result" object of a report; run() adds the envelope (command, inputs,
// inputs_digest) and handles files and exit codes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "abelpow/certify.hpp"
#include "abelpow/semigroup.hpp"

namespace abelpow::cli {

using linalg::ComplexMatrix;

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericalFailure = 3 };

nlohmann::json cmd_certify(const ComplexMatrix& t, const std::vector<double>& alphas,
                           const certify::Tolerances& tol);

struct AbelPowerOutput {
  nlohmann::json result;
  /// "exponent,defect" history.
  std::string csv;
};

AbelPowerOutput cmd_abel_power(const ComplexMatrix& t, double alpha, double tol, double rank_tol);

nlohmann::json cmd_cesaro(const ComplexMatrix& t, std::uint64_t n, std::uint64_t sweep, double rank_tol);

nlohmann::json cmd_semigroup(const ComplexMatrix& b, double lambda, int n, const semigroup::QuadratureSpec& spec,
                             double tol);

nlohmann::json cmd_oscillator(double lambda, int m, linalg::Index truncation);

/// Full command line (without the program name). Reports go to `out` unless
/// --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelpow::cli
