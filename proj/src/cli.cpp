#include "abelpow/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "abelpow/instances.hpp"
#include "abelpow/matrix_io.hpp"
#include "abelpow/oscillator.hpp"
#include "abelpow/report.hpp"

namespace abelpow::cli {

using nlohmann::json;

namespace {

json complex_json(linalg::Complex z) { return json::array({z.real(), z.imag()}); }

json spectrum_json(const std::vector<linalg::Complex>& values) {
  json out = json::array();
  for (const auto& z : values) out.push_back(complex_json(z));
  return out;
}

json witnesses_json(const std::vector<certify::Witness>& witnesses) {
  json out = json::array();
  for (const auto& w : witnesses) out.push_back({{"kind", w.kind}, {"value", complex_json(w.value)}});
  return out;
}

json convergence_json(const abel::ConvergenceReport& r) {
  json out{{"converged", r.converged}, {"steps", r.steps}, {"doublings", r.history.size()}};
  out["divergence_reason"] = r.divergence_reason ? json(std::string(to_string(*r.divergence_reason))) : json(nullptr);
  out["limit"] = r.limit ? io::matrix_to_json(*r.limit) : json(nullptr);
  if (!r.history.empty()) out["final_defect"] = r.history.back().distance;
  return out;
}

json tolerances_json(const certify::Tolerances& t) {
  return {{"power_tol", t.power_tol},
          {"rank_tol", t.rank_tol},
          {"spectral_slack", t.spectral_slack},
          {"cluster_radius", t.cluster_radius},
          {"blow_up", t.blow_up},
          {"max_doublings", t.max_doublings}};
}

std::optional<abel::RieszProjection> try_projection(const ComplexMatrix& t, double rank_tol) {
  try {
    return abel::riesz_projection_at_one(t, rank_tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DecompositionFails) throw;
    return std::nullopt;
  }
}

}  // namespace

json cmd_certify(const ComplexMatrix& t, const std::vector<double>& alphas, const certify::Tolerances& tol) {
  std::vector<abel::AbelParameter> params;
  for (double a : alphas) params.emplace_back(a);
  const auto rep = certify::verify_theorem_2_1(t, params, tol);

  json per_alpha = json::array();
  for (const auto& ev : rep.condition_i.per_alpha) {
    json entry = convergence_json(ev.report);
    entry["alpha"] = ev.alpha;
    entry["resolvent_pole"] = ev.resolvent_pole;
    entry.erase("limit");
    per_alpha.push_back(std::move(entry));
  }
  json cond_i{{"verdict", std::string(to_string(rep.condition_i.verdict))},
              {"per_alpha", std::move(per_alpha)},
              {"max_limit_disagreement", rep.condition_i.max_limit_disagreement},
              {"witnesses", witnesses_json(rep.condition_i.witnesses)}};
  cond_i["limit"] = rep.condition_i.limit ? io::matrix_to_json(*rep.condition_i.limit) : json(nullptr);

  const auto& c2 = rep.condition_ii;
  json cond_ii{{"verdict", std::string(to_string(c2.verdict))},
               {"spectrum", spectrum_json(c2.spectrum)},
               {"max_real_eigenvalue", complex_json(c2.max_real_eigenvalue)},
               {"rank_I_minus_T", c2.rank_defect},
               {"rank_I_minus_T_squared", c2.rank_defect_squared},
               {"witnesses", witnesses_json(c2.witnesses)}};
  if (c2.projection) {
    cond_ii["projection"] = io::matrix_to_json(c2.projection->matrix);
    cond_ii["idempotency_defect"] = c2.projection->idempotency_defect;
  } else {
    cond_ii["projection"] = nullptr;
  }
  json out{{"condition_i", std::move(cond_i)},
           {"condition_ii", std::move(cond_ii)},
           {"tolerances_used", tolerances_json(rep.tolerances_used)}};
  out["agree"] = rep.agree ? json(*rep.agree) : json(nullptr);
  return out;
}

AbelPowerOutput cmd_abel_power(const ComplexMatrix& t, double alpha, double tol, double rank_tol) {
  const ComplexMatrix average = abel::abel_average(t, abel::AbelParameter(alpha));
  abel::PowerIterationOptions opts;
  opts.tol = tol;
  const auto report = abel::power_iterate(average, opts);

  AbelPowerOutput out;
  out.result = convergence_json(report);
  out.result["abel_average"] = io::matrix_to_json(average);
  const auto projection = try_projection(t, rank_tol);
  out.result["riesz_projection"] = projection ? io::matrix_to_json(projection->matrix) : json(nullptr);
  if (projection && report.limit) {
    out.result["limit_minus_projection"] = linalg::operator_norm(*report.limit - projection->matrix);
  }
  std::ostringstream csv;
  csv << "exponent,defect\n";
  for (const auto& h : report.history) csv << h.exponent << ',' << report::format_double(h.distance) << '\n';
  out.csv = csv.str();
  return out;
}

json cmd_cesaro(const ComplexMatrix& t, std::uint64_t n, std::uint64_t sweep, double rank_tol) {
  const ComplexMatrix average = abel::cesaro_average(t, n);
  json out{{"cesaro_average", io::matrix_to_json(average)}, {"norm", linalg::operator_norm(average)}};
  const auto projection = try_projection(t, rank_tol);
  out["riesz_projection"] = projection ? io::matrix_to_json(projection->matrix) : json(nullptr);
  out["distance_to_projection"] =
      projection ? json(linalg::operator_norm(average - projection->matrix)) : json(nullptr);

  const auto sup = certify::cesaro_sup_estimate(t, sweep);
  out["cesaro_sup"] = {{"sup", sup.sup},
                       {"argmax_n", sup.argmax_n},
                       {"n_max", sweep},
                       {"overflow", sup.overflow},
                       {"note", std::string(certify::SupEstimate::note)}};

  certify::Tolerances tol;
  tol.rank_tol = rank_tol;
  const auto growth = certify::check_growth_1_3(t, std::max<std::uint64_t>(n, 4), tol);
  json samples = json::array();
  for (const auto& s : growth.samples) samples.push_back({{"n", s.n}, {"value", s.value}});
  out["growth"] = {{"samples", std::move(samples)},
                   {"heuristic_holds", growth.heuristic_holds},
                   {"exact_holds", growth.exact_holds},
                   {"overflow", growth.overflow},
                   {"witnesses", witnesses_json(growth.witnesses)}};
  return out;
}

json cmd_semigroup(const ComplexMatrix& b, double lambda, int n, const semigroup::QuadratureSpec& spec, double tol) {
  const semigroup::GeneratorMatrix g(b);
  const ComplexMatrix closed = semigroup::abel_average_closed(g, lambda);
  const ComplexMatrix quad = semigroup::abel_average_quadrature(g, lambda, spec);
  const double closed_norm = linalg::operator_norm(closed);

  ComplexMatrix closed_power = linalg::identity(g.dimension());
  for (int k = 0; k < n; ++k) closed_power = closed_power * closed;
  const ComplexMatrix quad_power = semigroup::abel_power_quadrature(g, lambda, n, spec);
  const double power_norm = linalg::operator_norm(closed_power);

  const auto bridge = semigroup::discrete_bridge(g, lambda);
  const auto ergodic = semigroup::ergodic_projection_continuous(g, lambda, tol);
  const auto growth = semigroup::growth_log_norm(g, {1.0, 10.0, 100.0, 1000.0});

  json growth_samples = json::array();
  for (const auto& s : growth.samples) growth_samples.push_back({{"t", s.t}, {"value", s.value}});

  json ergodic_json = convergence_json(ergodic.convergence);
  ergodic_json["kernel_defect"] = ergodic.kernel_defect;
  ergodic_json["projects_onto_kernel"] = ergodic.projects_onto_kernel;

  return {{"abel_average_closed", io::matrix_to_json(closed)},
          {"abel_average_quadrature", io::matrix_to_json(quad)},
          {"quadrature_relative_defect", linalg::operator_norm(quad - closed) / closed_norm},
          {"power_n", n},
          {"power_relative_defect", linalg::operator_norm(quad_power - closed_power) / power_norm},
          {"bridge", {{"alpha", bridge.alpha}, {"relative_defect", bridge.relative_defect}, {"pass", bridge.pass}}},
          {"ergodic_projection", std::move(ergodic_json)},
          {"growth_log_norm",
           {{"samples", std::move(growth_samples)},
            {"heuristic_holds", growth.heuristic_holds},
            {"overflow", growth.overflow},
            {"spectral_bound", growth.spectral_bound}}}};
}

json cmd_oscillator(double lambda, int m, linalg::Index truncation) {
  const oscillator::DiagonalOscillator model(truncation);
  const auto power = oscillator::scaled_resolvent_power_gap(model, lambda, m);
  const auto first = oscillator::first_order_gap(model, lambda);
  const auto c = oscillator::c_constant(model, lambda);

  const oscillator::Grid grid{-12.0, 12.0, 1e-3};
  json residuals = json::array();
  for (int k = 0; k <= 10; ++k) residuals.push_back({{"n", k}, {"residual", oscillator::eigen_residual(k, grid)}});
  const Eigen::MatrixXd gram = oscillator::hermite_gram(10, grid);
  const double gram_defect = (gram - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff();

  json power_json{{"gap", power.gap}, {"ratio", power.ratio}, {"m", m}};
  power_json["bound"] = power.bound ? json(*power.bound) : json(nullptr);
  return {{"scaled_resolvent_power_gap", std::move(power_json)},
          {"first_order_gap", {{"gap", first.gap}, {"bound", first.bound}}},
          {"c_constant", {{"partial_sum", c.partial_sum}, {"tail", c.tail}, {"value", c.value()}}},
          {"hermite",
           {{"grid", {{"t_min", grid.t_min}, {"t_max", grid.t_max}, {"step", grid.step}}},
            {"eigen_residuals", std::move(residuals)},
            {"gram_max_defect", gram_defect}}}};
}

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  file << text;
}

json envelope(const std::string& command, json inputs, json result) {
  const std::string digest = report::digest(report::dump(inputs));
  return {{"command", command}, {"inputs", std::move(inputs)}, {"inputs_digest", digest}, {"result", std::move(result)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Abel averages, power convergence certificates and the oscillator example", "abelpow"};
  app.require_subcommand(1);

  std::string matrix_path, out_path, csv_path;
  std::vector<double> alphas;
  double alpha = 0.5, lambda = 1.0, tol = 1e-10, t_max_factor = 40.0, max_condition = 1e2;
  double rank_tol = certify::Tolerances{}.rank_tol;
  int n_power = 2, nodes = 64, m = 4;
  std::uint64_t n_cesaro = 1000, sweep = 1000, seed = 0;
  linalg::Index truncation = oscillator::DiagonalOscillator::kDefaultTruncation;
  std::string scheme = "gauss_laguerre", kind = "auto";

  auto* certify_cmd = app.add_subcommand("certify", "check both sides of the power-convergence equivalence");
  certify_cmd->add_option("matrix", matrix_path, "matrix file")->required();
  certify_cmd->add_option("--alpha", alphas, "Abel parameter (repeatable)");
  certify_cmd->add_option("--tol", tol, "power-iteration tolerance");
  certify_cmd->add_option("--rank-tol", rank_tol, "relative numerical-rank threshold");

  auto* power_cmd = app.add_subcommand("abel-power", "powers of the Abel average by repeated squaring");
  power_cmd->add_option("matrix", matrix_path, "matrix file")->required();
  power_cmd->add_option("--alpha", alpha, "Abel parameter");
  power_cmd->add_option("--tol", tol, "power-iteration tolerance");
  power_cmd->add_option("--rank-tol", rank_tol, "relative numerical-rank threshold");
  power_cmd->add_option("--csv", csv_path, "write the convergence history as CSV");

  auto* cesaro_cmd = app.add_subcommand("cesaro", "Cesaro average and its finite-sweep supremum");
  cesaro_cmd->add_option("matrix", matrix_path, "matrix file")->required();
  cesaro_cmd->add_option("--n", n_cesaro, "number of averaged powers")->check(CLI::PositiveNumber);
  cesaro_cmd->add_option("--sweep", sweep, "N_max of the supremum sweep")->check(CLI::PositiveNumber);
  cesaro_cmd->add_option("--rank-tol", rank_tol, "relative numerical-rank threshold");

  auto* semigroup_cmd = app.add_subcommand("semigroup", "Abel average of exp(tB): closed form and quadrature");
  semigroup_cmd->add_option("matrix", matrix_path, "generator file")->required();
  semigroup_cmd->add_option("--lambda", lambda, "Abel parameter lambda > 0");
  semigroup_cmd->add_option("--n", n_power, "power checked against the weighted integral")->check(CLI::PositiveNumber);
  semigroup_cmd->add_option("--nodes", nodes, "quadrature nodes (Simpson: intervals)");
  semigroup_cmd->add_option("--t-max-factor", t_max_factor, "Simpson horizon in units of 1/lambda");
  semigroup_cmd->add_option("--scheme", scheme, "gauss_laguerre or truncated_simpson")
      ->check(CLI::IsMember({"gauss_laguerre", "truncated_simpson"}));
  semigroup_cmd->add_option("--tol", tol, "power-iteration tolerance");

  auto* osc_cmd = app.add_subcommand("oscillator", "truncated Hermite-oscillator model");
  osc_cmd->add_option("--lambda", lambda, "resolvent parameter lambda > 1");
  osc_cmd->add_option("--m", m, "resolvent power")->check(CLI::PositiveNumber);
  osc_cmd->add_option("--truncation", truncation, "model truncation");

  auto* gen_cmd = app.add_subcommand("generate", "write a seeded Jordan-structured test matrix");
  gen_cmd->add_option("--seed", seed, "generator seed");
  gen_cmd->add_option("--kind", kind, "auto, semisimple_at_one, jordan_at_one or spectrum_escapes")
      ->check(CLI::IsMember({"auto", "semisimple_at_one", "jordan_at_one", "spectrum_escapes"}));
  gen_cmd->add_option("--max-condition", max_condition, "upper bound for cond(S)");

  for (auto* sub : {certify_cmd, power_cmd, cesaro_cmd, semigroup_cmd, osc_cmd, gen_cmd}) {
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  }

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("abelpow");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen_cmd) {
      instances::InstanceOptions opts;
      opts.max_condition = max_condition;
      const auto inst = kind == "auto" ? instances::generate_instance(seed, opts)
                        : kind == "semisimple_at_one"
                            ? instances::generate_instance(seed, instances::InstanceKind::semisimple_at_one, opts)
                        : kind == "jordan_at_one"
                            ? instances::generate_instance(seed, instances::InstanceKind::jordan_at_one, opts)
                            : instances::generate_instance(seed, instances::InstanceKind::spectrum_escapes, opts);
      emit(io::serialize_matrix(inst.t), out_path, out);
      return kOk;
    }
    if (*osc_cmd) {
      json inputs{{"lambda", lambda}, {"m", m}, {"truncation", truncation}};
      emit(report::dump(envelope("oscillator", inputs, cmd_oscillator(lambda, m, truncation))), out_path, out);
      return kOk;
    }

    const ComplexMatrix matrix = io::parse_matrix(matrix_path);
    json inputs{{"matrix", io::matrix_to_json(matrix)}};
    if (*certify_cmd) {
      if (alphas.empty()) alphas = {0.1, 0.5, 0.9};
      certify::Tolerances tolerances;
      tolerances.power_tol = tol;
      tolerances.rank_tol = rank_tol;
      inputs["alphas"] = alphas;
      inputs["tolerances"] = tolerances_json(tolerances);
      emit(report::dump(envelope("certify", inputs, cmd_certify(matrix, alphas, tolerances))), out_path, out);
    } else if (*power_cmd) {
      inputs["alpha"] = alpha;
      inputs["tol"] = tol;
      inputs["rank_tol"] = rank_tol;
      auto result = cmd_abel_power(matrix, alpha, tol, rank_tol);
      json rep = envelope("abel-power", inputs, std::move(result.result));
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) fail(ErrorCode::InvalidArgument, "cannot write '" + csv_path + "'");
        csv << result.csv;
        rep["history_csv_path"] = csv_path;
      }
      emit(report::dump(rep), out_path, out);
    } else if (*cesaro_cmd) {
      inputs["n"] = n_cesaro;
      inputs["sweep"] = sweep;
      inputs["rank_tol"] = rank_tol;
      emit(report::dump(envelope("cesaro", inputs, cmd_cesaro(matrix, n_cesaro, sweep, rank_tol))), out_path, out);
    } else if (*semigroup_cmd) {
      semigroup::QuadratureSpec spec;
      spec.node_count = nodes;
      spec.t_max_factor = t_max_factor;
      spec.scheme = scheme == "gauss_laguerre" ? semigroup::QuadratureScheme::gauss_laguerre
                                               : semigroup::QuadratureScheme::truncated_simpson;
      inputs["lambda"] = lambda;
      inputs["n"] = n_power;
      inputs["nodes"] = nodes;
      inputs["t_max_factor"] = t_max_factor;
      inputs["scheme"] = scheme;
      inputs["tol"] = tol;
      emit(report::dump(envelope("semigroup", inputs, cmd_semigroup(matrix, lambda, n_power, spec, tol))), out_path,
           out);
    }
    return kOk;
  } catch (const Error& e) {
    err << "abelpow: " << e.what() << '\n';
    return e.is_input_error() ? kInputError : kNumericalFailure;
  } catch (const std::exception& e) {
    err << "abelpow: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace abelpow::cli
