// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "coherence/measures.hpp"
#include "coherence/power.hpp"
#include "coherence/suites.hpp"

using namespace coherence;

namespace {

struct Outcome {
  bool passed;
  std::string summary;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= budget_seconds;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %-28s %s [%.1fs / %.0fs%s]\n", ok ? "PASS" : "FAIL", id, name, o.summary.c_str(), secs,
              budget_seconds, in_time ? "" : " over budget");
  std::fflush(stdout);
}

Outcome suite(const char* name, int trials, std::uint64_t seed, const std::function<std::string(const SuiteResult&)>& extra) {
  const SuiteResult r = run_suite(name, trials, seed);
  return {r.passed, fmt("trials=%.0f max_violation=%.3g tol=%.0e", r.trials, r.max_violation, r.tolerance) + extra(r)};
}

std::string none(const SuiteResult&) { return {}; }

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  std::printf("acceptance seed %llu\n", static_cast<unsigned long long>(seed));

  criterion(1, "unit-coherence anchors", 1.0, [] {
    Rng rng(1);
    const DensityMatrix phi2 = maximally_coherent(2).density();
    const double cr = c_r(phi2);
    const double cf = c_f(phi2, {}, rng).value;
    const double cf_plus = c_f(phi_plus().density(), {}, rng).value;
    const double worst = std::max({std::abs(cr - 1), std::abs(cf - 1), std::abs(cf_plus - 1)});
    return Outcome{worst <= 1e-9, fmt("C_r(Phi2)=%.12f C_f(Phi2)=%.12f C_f(Phi+)=%.12f", cr, cf, cf_plus)};
  });

  criterion(2, "superadditivity demo", 30.0, [&] {
    DemoOptions o;
    o.seed = seed;
    const SuperadditivityReport r = superadditivity_demo(o);
    // the search bound is compared with 1 + delta at 1e-9 slack (see README)
    const bool ok = r.output_residual <= 1e-10 && r.delta > 0 && r.cf_output_search >= r.cf_output_lower - 1e-9 &&
                    r.cf_output_search <= 2.0;
    return Outcome{ok, fmt("residual=%.2g delta=%.9f search=%.12f", r.output_residual, r.delta, r.cf_output_search)};
  });

  criterion(3, "C_r monotonicity (NC)", 60.0, [&] { return suite("thm1", 1000, seed, none); });
  criterion(4, "qubit C_f and C_l1 monotonicity", 30.0, [&] {
    return suite("thm2", 1000, seed, [](const SuiteResult& r) { return fmt(" l1_gain=%.3g", r.details.at("max_l1_gain")); });
  });
  criterion(5, "qubit C_f oracle agreement", 120.0, [&] { return suite("lemma2", 200, seed, none); });
  criterion(6, "correlated embedding C_f=E_f", 600.0, [&] {
    return suite("lemma1", 500, seed, [](const SuiteResult& r) {
      return fmt(" qutrit_gap=%.3g (tol 2e-3, %.0f states)", r.details.at("max_qutrit_search_gap"), r.details.at("qutrit_trials"));
    });
  });
  criterion(7, "Bloch NC equivalence", 10.0, [&] { return suite("bloch", 500, seed, none); });
  criterion(8, "rank-2 NC families", 300.0, [&] {
    return suite("families", 1000, seed, [](const SuiteResult& r) {
      return fmt(" ic_searches=%.0f ic_found=%.0f", r.details.at("ic_searches"), r.details.at("ic_found"));
    });
  });
  criterion(9, "product gain identity", 60.0, [&] {
    return suite("thm4", 200, seed, [](const SuiteResult& r) {
      return fmt(" probe_shortfall=%.3g (tol 1e-6)", r.details.at("max_probe_shortfall"));
    });
  });
  criterion(10, "C_f >= C_r ordering", 300.0, [&] {
    return suite("c5", 300, seed, [](const SuiteResult& r) {
      return fmt(" equality_gap=%.3g (tol 1e-3, %.0f states)", r.details.at("max_equality_gap"), r.details.at("equality_trials"));
    });
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
