#include <cmath>

#include "doctest.h"

#include "coherence/power.hpp"

using namespace coherence;

TEST_CASE("coherence gain") {
  Rng rng(1);
  const DensityMatrix rho = random_density(3, 2, rng);
  CHECK(std::abs(coherence_gain(identity_channel(3), rho, Measure::RelativeEntropy).gain) < 1e-12);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix q = random_density(2, 2, rng);
    CHECK(coherence_gain(random_nc_qubit(rng), q, Measure::RelativeEntropy).gain <= 1e-8);
  }
  const CoherenceGain g = coherence_gain(tensor(identity_channel(2), example_channel()), phi_plus().density(),
                                         Measure::Formation);
  CHECK(g.gain > 0.4);
  CHECK(g.before_method == "search");
  const CoherenceGain q = coherence_gain(example_channel(), maximally_coherent(2).density(), Measure::Formation);
  CHECK(q.after_method == "closed_form");
  CHECK(q.gain <= 1e-12);
  CHECK(parse_measure("C_f") == Measure::Formation);
  CHECK_THROWS(parse_measure("c_l1"));
}

TEST_CASE("power estimates") {
  Rng rng(2);
  PowerOptions o;
  o.starts = 16;
  const PowerEstimate had = estimate_power(hadamard_channel(), Measure::RelativeEntropy, o, rng);
  CHECK(had.best_gain >= 1 - 1e-6);
  CHECK(std::abs(had.best_gain - coherence_gain(hadamard_channel(), had.best_input, Measure::RelativeEntropy).gain) <= 1e-8);

  const PowerEstimate deph = estimate_power(dephasing_channel(2), Measure::RelativeEntropy, o, rng);
  CHECK(deph.power_lower_bound == 0.0);

  const PowerEstimate ex = estimate_power(example_channel(), Measure::Formation, o, rng);
  CHECK(ex.power_lower_bound == 0.0);
  CHECK(ex.best_gain <= 1e-6);

  for (int t = 0; t < 5; ++t) {
    const KrausChannel ch = random_channel(2, 2, rng);
    const PowerEstimate e = estimate_power(ch, Measure::RelativeEntropy, o, rng);
    CHECK(e.power_lower_bound == std::max(e.best_gain, 0.0));
    CHECK(std::abs(e.best_gain - coherence_gain(ch, e.best_input, Measure::RelativeEntropy).gain) <= 1e-8);
  }
}

TEST_CASE("product gain identity") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const auto r = product_gain_identity(random_nc_qubit(rng), random_channel(2, 2, rng), random_density(2, 2, rng),
                                         random_density(2, 1, rng), Measure::RelativeEntropy);
    CHECK(r.asserted);
    CHECK(std::abs(r.lhs - r.rhs) <= 1e-8);
  }
  const auto id = product_gain_identity(identity_channel(2), identity_channel(2), random_density(2, 2, rng),
                                        random_density(2, 2, rng), Measure::RelativeEntropy);
  CHECK(std::abs(id.lhs) < 1e-12);
  CHECK(std::abs(id.rhs) < 1e-12);
  const auto cf = product_gain_identity(example_channel(), identity_channel(2), random_density(2, 2, rng),
                                        random_density(2, 2, rng), Measure::Formation);
  CHECK_FALSE(cf.asserted);
}

TEST_CASE("span entropy gap") {
  const auto [delta, theta, phi] = span_entropy_gap(90);
  CHECK(delta > 0.0);
  CHECK(span_entropy_closed_form(theta, phi) == doctest::Approx(1.0 + delta));
}

TEST_CASE("superadditivity demo") {
  const SuperadditivityReport r = superadditivity_demo();
  CHECK(r.output_residual <= 1e-10);
  CHECK(r.delta > 0.0);
  CHECK(r.cf_output_lower == doctest::Approx(1.0 + r.delta));
  CHECK(r.cf_output_search <= 2.0);
  CHECK(r.cf_output_search >= r.cf_output_lower - 1e-9);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
}
