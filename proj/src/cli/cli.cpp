#include "phasedetect/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phasedetect/analytic.hpp"
#include "phasedetect/csv.hpp"
#include "phasedetect/fock_space.hpp"
#include "phasedetect/loss_channel.hpp"
#include "phasedetect/protocols.hpp"
#include "phasedetect/verification.hpp"

namespace phasedetect::cli {

namespace {

struct ScenarioFlags {
  std::string family = "fock";
  int n = 1;
  double alpha = 2.0;
  double eta = 1.0;
  double r = 0.0;
  double photons = 1e6;
  double p0 = 0.5;
  std::optional<int> dim;
  double tail_tol = kDefaultTailTol;
  bool oracle = false;
  std::string out;

  ProtocolParams params() const {
    ProtocolParams p;
    p.family = family_from_string(family);
    p.n = n;
    p.alpha = alpha;
    p.eta = eta;
    p.r = r;
    p.photons = photons;
    p.p0 = p0;
    p.p_delta = 1.0 - p0;
    p.validate();
    return p;
  }

  NumericOptions numeric() const {
    if (dim && *dim < 2) throw ValidationError("--dim must be >= 2");
    if (!(tail_tol > 0.0)) throw ValidationError("--tail-tol must be > 0");
    return {oracle, dim, tail_tol};
  }
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f, bool family_required, bool oracle_default) {
  f.oracle = oracle_default;
  auto* family = cmd->add_option("--family", f.family, "Probe state: fock or cat")->check(CLI::IsMember({"fock", "cat"}));
  if (family_required) family->required();
  cmd->add_option("--n", f.n, "Fock photon number")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Cat amplitude (real)")->capture_default_str();
  cmd->add_option("--eta", f.eta, "Detector quantum efficiency in (0, 1]")->capture_default_str();
  cmd->add_option("--r", f.r, "Logarithmic squeeze factor")->capture_default_str();
  cmd->add_option("--photons", f.photons, "Photons at the phase object (N)")->capture_default_str();
  cmd->add_option("--p0", f.p0, "Prior probability of no phase shift")->capture_default_str();
  cmd->add_option("--dim", f.dim, "Fock basis size (default: recommended from the parameters)");
  cmd->add_option("--tail-tol", f.tail_tol, "Truncation leakage tolerance")->capture_default_str();
  cmd->add_flag("--oracle,!--no-oracle", f.oracle, "Also run the truncated Fock-space simulation");
  cmd->add_option("--out", f.out, "Write CSV to this file instead of standard output");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw ComputationError("failed writing '" + path + "'");
}

void require_steps(int steps) {
  if (steps < 1) throw ValidationError("--steps must be >= 1");
}

void require_positive(double value, const char* flag) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError(std::string(flag) + " must be finite and > 0");
}

// --- overlap -----------------------------------------------------------------

struct OverlapFlags {
  ScenarioFlags scenario;
  double delta_max = 0.0;
  int steps = 300;
};

std::string cmd_overlap(const OverlapFlags& f) {
  const ProtocolParams params = f.scenario.params();
  require_positive(f.delta_max, "--delta-max");
  require_steps(f.steps);
  const NumericOptions numeric = f.scenario.numeric();

  std::ostringstream text;
  std::vector<std::string> header = {"delta", "analytic"};
  if (numeric.with_oracle) {
    header.push_back("numeric");
    header.push_back("abs_diff");
  }
  csv::Writer csv(text, header);

  std::optional<DisplacementFamily> displace;
  std::optional<PureState> probe;
  if (numeric.with_oracle) {
    const double amplitude = params.family == Family::Fock ? std::sqrt(static_cast<double>(params.n)) : params.alpha;
    FockSpace space(numeric.dim.value_or(recommend_dim(amplitude, f.delta_max, numeric.tail_tol)), numeric.tail_tol);
    displace.emplace(space);
    probe = params.family == Family::Fock ? fock_state(space, params.n) : cat_state(space, params.alpha);
  }

  for (int i = 1; i <= f.steps; ++i) {
    const double delta = f.delta_max * i / f.steps;
    const double exact = params.family == Family::Fock ? analytic::fock_overlap(params.n, delta)
                                                       : analytic::cat_overlap(params.alpha, delta);
    if (!numeric.with_oracle) {
      csv.row({delta, exact});
      continue;
    }
    PureState shifted(probe->space(), displace->apply(delta, probe->amplitudes()), probe->leakage());
    const Complex value = overlap(*probe, shifted);
    csv.row({delta, exact, value.real(), std::abs(value - exact)});
  }
  return text.str();
}

// --- parity ------------------------------------------------------------------

struct ParityFlags {
  ScenarioFlags scenario;
  double delta_max = 0.0;
  int steps = 300;
};

std::string cmd_parity(const ParityFlags& f) {
  ScenarioFlags scenario = f.scenario;
  scenario.family = "cat";
  const ProtocolParams params = scenario.params();
  require_positive(f.delta_max, "--delta-max");
  require_steps(f.steps);
  const NumericOptions numeric = scenario.numeric();

  std::ostringstream text;
  std::vector<std::string> header = {"delta", "analytic"};
  if (numeric.with_oracle) {
    header.push_back("numeric");
    header.push_back("abs_diff");
  }
  csv::Writer csv(text, header);

  std::optional<FockSpace> space;
  std::optional<DisplacementFamily> displace;
  std::optional<PureState> cat;
  if (numeric.with_oracle) {
    space.emplace(numeric.dim.value_or(recommend_dim(params.alpha, f.delta_max, numeric.tail_tol)), numeric.tail_tol);
    displace.emplace(*space);
    cat = cat_state(*space, params.alpha);
  }
  for (int i = 0; i <= f.steps; ++i) {
    const double delta = f.delta_max * i / f.steps;
    const double exact = analytic::cat_parity(params.alpha, delta, params.eta);
    if (!numeric.with_oracle) {
      csv.row({delta, exact});
      continue;
    }
    PureState shifted(*space, displace->apply(delta, cat->amplitudes()), cat->leakage());
    const double value = parity_expectation(apply_loss(LossChannel(params.eta, *space), shifted));
    csv.row({delta, exact, value, std::abs(value - exact)});
  }
  return text.str();
}

// --- evaluate / optimize / sweep -------------------------------------------

std::vector<std::string> rate_header(bool with_oracle) {
  std::vector<std::string> h = {"phi", "delta", "delta_detected", "p_fp", "p_fn", "helstrom"};
  if (with_oracle) {
    for (const char* c : {"numeric_p_fp", "numeric_p_fn", "numeric_helstrom", "discrepancy", "dim"}) h.emplace_back(c);
  }
  return h;
}

std::vector<csv::Cell> rate_cells(const Evaluation& ev, bool with_oracle) {
  const double nan = std::nan("");
  std::vector<csv::Cell> cells = {ev.phi, ev.delta, ev.delta_detected};
  if (ev.analytic) {
    cells.insert(cells.end(), {ev.analytic->p_fp, ev.analytic->p_fn, ev.analytic->helstrom});
  } else {
    cells.insert(cells.end(), {nan, nan, nan});
  }
  if (with_oracle) {
    cells.insert(cells.end(), {ev.numeric->p_fp, ev.numeric->p_fn, ev.numeric->helstrom, ev.discrepancy.value_or(nan)});
    cells.emplace_back(static_cast<long long>(ev.dim));
  }
  return cells;
}

struct EvaluateFlags {
  ScenarioFlags scenario;
  std::optional<double> phi;
  std::optional<double> delta;
};

std::string cmd_evaluate(const EvaluateFlags& f) {
  const ProtocolParams params = f.scenario.params();
  const NumericOptions numeric = f.scenario.numeric();
  if (f.phi && f.delta) throw ValidationError("give at most one of --phi and --delta");
  double phi;
  if (f.phi) {
    phi = *f.phi;
  } else if (f.delta) {
    phi = params.phi_from_delta(*f.delta);
  } else {
    phi = optimize_delta(params).phi0;
  }
  Evaluation ev = evaluate(params, phi, numeric);
  std::ostringstream text;
  auto header = rate_header(numeric.with_oracle);
  header.insert(header.begin(), "family");
  csv::Writer csv(text, header);
  auto cells = rate_cells(ev, numeric.with_oracle);
  cells.insert(cells.begin(), std::string(to_string(params.family)));
  csv.row(cells);
  return text.str();
}

std::string cmd_optimize(const ScenarioFlags& f) {
  const ProtocolParams params = f.params();
  const NumericOptions numeric = f.numeric();
  OperatingPoint op = optimize_delta(params);
  Evaluation ev = evaluate(params, op.phi0, numeric);
  std::ostringstream text;
  auto header = rate_header(numeric.with_oracle);
  header.insert(header.begin(), {"family", "source", "threshold_phi"});
  csv::Writer csv(text, header);
  auto cells = rate_cells(ev, numeric.with_oracle);
  cells.insert(cells.begin(), {std::string(to_string(params.family)), std::string(to_string(op.source)),
                               analytic::threshold_phase(params)});
  csv.row(cells);
  return text.str();
}

struct SweepFlags {
  ScenarioFlags scenario;
  std::string axis;
  std::vector<double> values;
  std::optional<double> from;
  std::optional<double> to;
  int steps = 0;
  unsigned threads = 0;
};

std::string cmd_sweep(const SweepFlags& f, std::ostream& err) {
  const SweepAxis axis = sweep_axis_from_string(f.axis);
  ProtocolParams params = f.scenario.params();
  const NumericOptions numeric = f.scenario.numeric();
  std::vector<double> values = f.values;
  if (values.empty()) {
    if (!f.from || !f.to || f.steps < 1) throw ValidationError("give --values or all of --from, --to, --steps");
    values = linspace(*f.from, *f.to, f.steps);
  } else if (f.from || f.to) {
    throw ValidationError("--values cannot be combined with --from/--to");
  }
  SweepResult result = sweep(params, axis, values, numeric, f.threads);

  std::ostringstream text;
  auto header = rate_header(numeric.with_oracle);
  header.insert(header.begin(), {std::string(to_string(axis)), "source"});
  csv::Writer csv(text, header);
  for (const auto& point : result.points) {
    auto cells = rate_cells(point.evaluation, numeric.with_oracle);
    std::string source = point.operating_point ? std::string(to_string(point.operating_point->source)) : "given";
    cells.insert(cells.begin(), {point.value, source});
    csv.row(cells);
  }
  if (result.max_discrepancy) err << "max_discrepancy=" << csv::format_number(*result.max_discrepancy) << "\n";
  return text.str();
}

// --- figure / verify -----------------------------------------------------------

struct FigureFlags {
  int id = 0;
  std::optional<int> steps;
  std::vector<double> etas;
  std::string out;
};

struct VerifyFlags {
  std::optional<double> tolerance;
  std::string grid = "full";
  std::vector<std::string> checks;
  std::string out;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  verification::Options options;
  options.grid = f.grid == "small" ? verification::Grid::Small : verification::Grid::Full;
  if (f.tolerance && !(*f.tolerance >= 0.0)) throw ValidationError("--tolerance must be >= 0");
  options.tolerance = f.tolerance;

  std::vector<verification::CheckResult> results;
  if (f.checks.empty()) {
    results = verification::run(options);
  } else {
    for (const auto& name : f.checks) results.push_back(verification::run_one(name, options));
  }

  std::ostringstream text;
  csv::Writer csv(text, {"check", "status", "max_discrepancy", "tolerance", "seconds"});
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    csv.row(std::vector<csv::Cell>{r.name, std::string(r.passed ? "pass" : "fail"), r.max_discrepancy, r.tolerance,
                                   r.seconds});
    if (!r.error.empty()) err << r.name << ": " << r.error << "\n";
  }
  emit(text.str(), f.out, out);
  if (!all_passed) {
    err << "verification failed\n";
    return kVerificationFailure;
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("phasedetect");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detection of a known interferometric phase shift with Fock and cat probes"};
  app.name("phasedetect");
  app.require_subcommand(1);

  OverlapFlags overlap_flags;
  auto* overlap_cmd = app.add_subcommand("overlap", "<psi_0|psi_delta> versus delta, closed form and simulated");
  add_scenario_flags(overlap_cmd, overlap_flags.scenario, true, true);
  overlap_cmd->add_option("--delta-max", overlap_flags.delta_max, "Largest delta on the grid")->required();
  overlap_cmd->add_option("--steps", overlap_flags.steps, "Number of grid points")->capture_default_str();

  ParityFlags parity_flags;
  auto* parity_cmd = app.add_subcommand("parity", "Parity of the lossy displaced cat versus delta");
  add_scenario_flags(parity_cmd, parity_flags.scenario, false, true);
  parity_cmd->add_option("--delta-max", parity_flags.delta_max, "Largest delta on the grid")->required();
  parity_cmd->add_option("--steps", parity_flags.steps, "Grid intervals (steps + 1 rows from delta = 0)")
      ->capture_default_str();

  EvaluateFlags evaluate_flags;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Error rates of one scenario at a given phase");
  add_scenario_flags(evaluate_cmd, evaluate_flags.scenario, true, false);
  evaluate_cmd->add_option("--phi", evaluate_flags.phi, "Phase shift in radians");
  evaluate_cmd->add_option("--delta", evaluate_flags.delta, "Effective displacement sqrt(N) phi e^r");

  ScenarioFlags optimize_flags;
  auto* optimize_cmd = app.add_subcommand("optimize", "Operating point minimising the false-negative rate");
  add_scenario_flags(optimize_cmd, optimize_flags, true, false);

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "Error rates along one parameter axis");
  add_scenario_flags(sweep_cmd, sweep_flags.scenario, true, false);
  sweep_cmd->add_option("--axis", sweep_flags.axis, "alpha, eta, n, delta or r")
      ->required()
      ->check(CLI::IsMember({"alpha", "eta", "n", "delta", "r"}));
  sweep_cmd->add_option("--values", sweep_flags.values, "Explicit axis values")->delimiter(',');
  sweep_cmd->add_option("--from", sweep_flags.from, "First axis value");
  sweep_cmd->add_option("--to", sweep_flags.to, "Last axis value");
  sweep_cmd->add_option("--steps", sweep_flags.steps, "Number of axis values");
  sweep_cmd->add_option("--threads", sweep_flags.threads, "Worker threads (0 = all cores)");

  FigureFlags figure_flags;
  auto* figure_cmd = app.add_subcommand("figure", "Data behind one of the figures (2..6)");
  figure_cmd->add_option("id,--id", figure_flags.id, "Figure number")->required()->check(CLI::Range(2, 6));
  figure_cmd->add_option("--steps", figure_flags.steps, "Grid size override");
  figure_cmd->add_option("--etas", figure_flags.etas, "Efficiency grid for figures 5 and 6")->delimiter(',');
  figure_cmd->add_option("--out", figure_flags.out, "Write CSV to this file instead of standard output");

  VerifyFlags verify_flags;
  auto* verify_cmd = app.add_subcommand("verify", "Closed forms against the truncated Fock-space simulation");
  verify_cmd->add_option("--tolerance", verify_flags.tolerance, "Override every check's tolerance");
  verify_cmd->add_option("--grid", verify_flags.grid, "small or full")
      ->check(CLI::IsMember({"small", "full"}))
      ->capture_default_str();
  verify_cmd->add_option("--check", verify_flags.checks, "Run only the named check(s)");
  verify_cmd->add_option("--out", verify_flags.out, "Write CSV to this file instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    err << "error: " << e.what() << "\n\n" << target->help();
    return kValidationError;
  }

  try {
    if (*overlap_cmd) emit(cmd_overlap(overlap_flags), overlap_flags.scenario.out, out);
    if (*parity_cmd) emit(cmd_parity(parity_flags), parity_flags.scenario.out, out);
    if (*evaluate_cmd) emit(cmd_evaluate(evaluate_flags), evaluate_flags.scenario.out, out);
    if (*optimize_cmd) emit(cmd_optimize(optimize_flags), optimize_flags.out, out);
    if (*sweep_cmd) emit(cmd_sweep(sweep_flags, err), sweep_flags.scenario.out, out);
    if (*figure_cmd) {
      FigureOptions options;
      options.steps = figure_flags.steps;
      if (!figure_flags.etas.empty()) options.etas = figure_flags.etas;
      std::ostringstream text;
      write_figure(figure_flags.id, options, text);
      emit(text.str(), figure_flags.out, out);
    }
    if (*verify_cmd) return cmd_verify(verify_flags, out, err);
  } catch (const SweepError& e) {
    err << "error: " << e.what() << "\n";
    return e.is_validation() ? kValidationError : kComputationError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputationError;
  }
  return kSuccess;
}

}  // namespace phasedetect::cli
