#include "coherence/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "coherence/errors.hpp"
#include "coherence/io.hpp"
#include "coherence/suites.hpp"

namespace coherence {

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out_path;
  int starts = -1;
  int iterations = -1;
  int pad_to = 0;
  int grid = 360;
  int trials = -1;
  std::string measures = "c_r,c_l1,c_tr,c_f";
  std::string measure = "c_r";
  std::string suite;
};

std::string fixed6(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << x;
  return s.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Rendered {
  Json json;
  std::string text;
  int code = kExitOk;
};

Rendered cmd_classify(const RunConfig& cfg, std::uint64_t seed) {
  const KrausChannel ch = channel_from_json(read_json_file(cfg.input));
  IcSearchOptions ic;
  if (cfg.starts > 0) ic.starts = cfg.starts;
  if (cfg.iterations > 0) ic.iterations = cfg.iterations;
  ic.pad_to = cfg.pad_to;
  Rng rng(seed);
  const ClassificationReport report = classify(ch, cfg.tol, ic, rng);

  Rendered r{to_json(report), {}};
  std::ostringstream t;
  t << "CPTP:  " << (report.cptp.valid ? "yes" : "no") << " (deviation " << fixed6(report.cptp.deviation) << ")\n";
  t << "NC:    " << (report.nc.nc ? "yes" : "no");
  if (report.nc.witness) t << " (witness basis index " << *report.nc.witness << ")";
  t << "\n";
  if (report.ic) {
    t << "IC:    " << (report.ic->found ? "found" : "not_found") << " after " << report.ic->starts_used
      << " starts (violation " << fixed6(report.ic->violation) << ")\n";
  } else {
    t << "IC:    skipped (channel is not trace preserving)\n";
  }
  r.text = t.str();
  return r;
}

Rendered cmd_measure(const RunConfig& cfg, std::uint64_t seed) {
  const DensityMatrix rho = state_from_json(read_json_file(cfg.input));
  Rendered r{{{"state", state_to_json(rho)}}, {}};
  std::ostringstream t;
  Rng rng(seed);
  DecompositionSearchOptions search;
  if (cfg.starts > 0) search.starts = cfg.starts;
  if (cfg.iterations > 0) search.iterations = cfg.iterations;
  for (const auto& m : split_list(cfg.measures)) {
    if (m == "c_r") {
      r.json["c_r"] = c_r(rho);
      t << "c_r:  " << fixed6(c_r(rho)) << "\n";
    } else if (m == "c_l1") {
      r.json["c_l1"] = c_l1(rho);
      t << "c_l1: " << fixed6(c_l1(rho)) << "\n";
    } else if (m == "c_tr") {
      const double v = c_tr(rho, {}, seed);
      r.json["c_tr"] = v;
      t << "c_tr: " << fixed6(v) << (rho.dim() == 2 ? "" : " (descent over incoherent states)") << "\n";
    } else if (m == "c_f") {
      const FormationValue v = c_f(rho, search, rng);
      r.json["c_f"] = {{"value", v.value}, {"method", v.method}, {"converged", v.converged}};
      if (v.method == "search") r.json["c_f"]["note"] = "upper bound from decomposition search";
      t << "c_f:  " << fixed6(v.value) << " (" << v.method;
      if (v.method == "search") t << ", upper bound, converged=" << (v.converged ? "true" : "false");
      t << ")\n";
    } else {
      throw ParseError("--measures: unknown measure '" + m + "'");
    }
  }
  r.text = t.str();
  return r;
}

Rendered cmd_power(const RunConfig& cfg, std::uint64_t seed) {
  const KrausChannel ch = channel_from_json(read_json_file(cfg.input));
  const auto cptp = validate_cptp(ch, std::max(cfg.tol, kCptpTolerance));
  if (!cptp.valid) throw ParseError("channel: not trace preserving (deviation " + std::to_string(cptp.deviation) + ")");
  if (ch.dim_in() != ch.dim_out()) throw ParseError("channel: power needs dim_in == dim_out");
  const Measure measure = parse_measure(cfg.measure);
  PowerOptions options;
  if (cfg.starts >= 0) options.starts = cfg.starts;
  if (cfg.iterations > 0) options.iterations = cfg.iterations;
  options.gain.search_seed = seed;
  Rng rng(seed);
  const PowerEstimate est = estimate_power(ch, measure, options, rng);
  Rendered r{to_json(est), {}};
  std::ostringstream t;
  t << "measure:           " << measure_name(measure) << "\n";
  t << "power_lower_bound: " << fixed6(est.power_lower_bound) << "\n";
  t << "best_gain:         " << fixed6(est.best_gain) << "\n";
  t << "starts_used:       " << est.starts_used << "\n";
  r.text = t.str();
  return r;
}

Rendered cmd_demo(const RunConfig& cfg, std::uint64_t seed) {
  DemoOptions options;
  options.grid = cfg.grid;
  options.seed = seed;
  if (cfg.starts > 0) options.search.starts = cfg.starts;
  const SuperadditivityReport rep = superadditivity_demo(options);
  Rendered r{to_json(rep), {}};
  std::ostringstream t;
  t << "rho_out residual vs (v1 v1' + v2 v2')/2: " << std::scientific << std::setprecision(2) << rep.output_residual
    << "\n";
  t << "C_f(Phi+) = " << fixed6(rep.cf_input) << "\n";
  t << "delta = " << fixed6(rep.delta) << " (grid " << rep.grid << "x" << rep.grid << ", theta=" << fixed6(rep.delta_theta)
    << ", phi=" << fixed6(rep.delta_phi) << ")\n";
  t << "C_f(rho_out) >= 1 + delta = " << fixed6(rep.cf_output_lower) << "\n";
  t << "C_f(rho_out) <= " << fixed6(rep.cf_output_search) << " (decomposition search)\n";
  for (const auto& c : rep.checks) t << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
  r.text = t.str();
  return r;
}

Rendered cmd_suite(const RunConfig& cfg, std::uint64_t seed) {
  const int trials = cfg.trials > 0 ? cfg.trials : default_trials(cfg.suite);
  const SuiteResult res = run_suite(cfg.suite, trials, seed);
  Rendered r{to_json(res), {}, res.passed ? kExitOk : kExitSuiteFailure};
  std::ostringstream t;
  t << res.name << ": " << res.description << "\n";
  t << "trials:        " << res.trials << "\n";
  t << "max violation: " << std::scientific << std::setprecision(3) << res.max_violation << " (tolerance "
    << res.tolerance << ")\n";
  t << std::defaultfloat;
  for (const auto& [k, v] : res.details) t << k << ": " << v << "\n";
  t << (res.passed ? "PASS" : "FAIL") << "\n";
  r.text = t.str();
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Coherence measures, NC channel classification and coherence-increasing power", "coherence"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Random seed (generated and reported if omitted)");
  app.add_option("--tol", cfg.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", cfg.out_path, "Write output to FILE instead of stdout");

  auto* classify = app.add_subcommand("classify", "CPTP / NC / IC-heuristic verdicts for a channel file");
  classify->add_option("channel", cfg.input, "Channel JSON file")->required();
  classify->add_option("--starts", cfg.starts, "IC search starts (default 200)");
  classify->add_option("--iterations", cfg.iterations, "IC search iterations per start (default 500)");
  classify->add_option("--pad-to", cfg.pad_to, "Pad the Kraus list with zero operators up to this length");

  auto* measure = app.add_subcommand("measure", "Coherence measures of a state file");
  measure->add_option("state", cfg.input, "State JSON file")->required();
  measure->add_option("--measures", cfg.measures, "Comma-separated subset of c_r,c_l1,c_tr,c_f");
  measure->add_option("--starts", cfg.starts, "Decomposition search starts for C_f (default 32)");
  measure->add_option("--iterations", cfg.iterations, "Decomposition search iterations (default 1000)");

  auto* power = app.add_subcommand("power", "Lower-bound estimate of the coherence-increasing power");
  power->add_option("channel", cfg.input, "Channel JSON file")->required();
  power->add_option("--measure", cfg.measure, "c_r or c_f")->check(CLI::IsMember({"c_r", "c_f", "C_r", "C_f"}));
  power->add_option("--starts", cfg.starts, "Random ascent starts (default 64)");
  power->add_option("--iterations", cfg.iterations, "Ascent iterations per start (default 500)");

  auto* demo = app.add_subcommand("demo", "Two-qubit superadditivity demonstration");
  demo->add_option("--grid", cfg.grid, "Grid resolution per angle")->check(CLI::PositiveNumber);
  demo->add_option("--starts", cfg.starts, "Decomposition search starts (default 32)");

  auto* suite = app.add_subcommand("suite", "Randomized property suite");
  suite->add_option("--name", cfg.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  suite->add_option("--n", cfg.trials, "Number of trials");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::uint64_t seed = seed_opt->count() > 0 ? seed_value : (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();

  Rendered r;
  try {
    if (*classify) {
      cfg.command = "classify";
      r = cmd_classify(cfg, seed);
    } else if (*measure) {
      cfg.command = "measure";
      r = cmd_measure(cfg, seed);
    } else if (*power) {
      cfg.command = "power";
      r = cmd_power(cfg, seed);
    } else if (*demo) {
      cfg.command = "demo";
      r = cmd_demo(cfg, seed);
    } else {
      cfg.command = "suite";
      r = cmd_suite(cfg, seed);
    }
  } catch (const InvalidStateError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitSuiteFailure;
  }

  r.json["seed"] = seed;
  r.json["command"] = cfg.command;
  r.json["tol"] = cfg.tol;
  const std::string payload = cfg.format == "json" ? r.json.dump(2) + "\n" : "seed: " + std::to_string(seed) + "\n" + r.text;

  if (cfg.out_path.empty()) {
    out << payload;
  } else {
    std::ofstream file(cfg.out_path);
    if (!file) {
      err << "error: cannot write " << cfg.out_path << "\n";
      return kExitInputError;
    }
    file << payload;
  }
  return r.code;
}

}  // namespace coherence
