#include "coherence/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coherence/errors.hpp"

namespace coherence {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"thm1",     "thm2", "closure", "lemma2", "lemma1",
                                                 "bloch",    "families", "thm4", "c5"};
  return names;
}

int default_trials(std::string_view name) {
  if (name == "thm1" || name == "thm2" || name == "families") return 1000;
  if (name == "lemma2" || name == "thm4") return 200;
  if (name == "lemma1" || name == "bloch") return 500;
  if (name == "c5") return 300;
  if (name == "closure") return 200;
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void track(SuiteResult& r, double violation) { r.max_violation = std::max(r.max_violation, violation); }

SuiteResult relative_entropy_monotonicity(int n, Rng& rng) {
  SuiteResult r{"thm1", "C_r never increases under NC channels, d in {2,3,4}", n, -1.0, 1e-8, 0, true, 0, {}};
  int non_nc = 0;
  for (int t = 0; t < n; ++t) {
    const int d = 2 + t % 3;
    KrausChannel ch = [&] {
      if (d == 2) return random_nc_qubit(rng);
      if (d == 3) return random_incoherent_channel(3, uniform_int(rng, 1, 4), rng);
      KrausChannel a = tensor(random_nc_qubit(rng), random_nc_qubit(rng));
      if (uniform_int(rng, 0, 2) != 0) return a;
      return compose(a, tensor(random_nc_qubit(rng), random_nc_qubit(rng)));
    }();
    if (!is_nc(ch).nc) ++non_nc;
    const DensityMatrix rho = random_density(d, uniform_int(rng, 1, d), rng);
    track(r, c_r(apply(ch, rho)) - c_r(rho));
  }
  r.failures = non_nc;
  r.passed = r.max_violation <= r.tolerance && non_nc == 0;
  r.details["sampled_non_nc_channels"] = non_nc;
  return r;
}

SuiteResult qubit_formation_monotonicity(int n, Rng& rng) {
  SuiteResult r{"thm2", "qubit C_f (closed form) and C_l1 never increase under qubit NC channels", n, -1.0, 1e-8, 0, true, 0, {}};
  double max_l1 = -1.0;
  for (int t = 0; t < n; ++t) {
    const KrausChannel ch = random_nc_qubit(rng);
    const DensityMatrix rho = random_density(2, uniform_int(rng, 1, 2), rng);
    const DensityMatrix out = apply(ch, rho);
    track(r, c_f_qubit(out) - c_f_qubit(rho));
    max_l1 = std::max(max_l1, c_l1(out) - c_l1(rho));
  }
  r.details["max_l1_gain"] = max_l1;
  r.details["l1_tolerance"] = 1e-9;
  r.passed = r.max_violation <= r.tolerance && max_l1 <= 1e-9;
  return r;
}

SuiteResult closure(int n, Rng& rng) {
  SuiteResult r{"closure", "tensor and composition preserve CPTP (1e-9) and NC", n, 0.0, 1e-9, 0, true, 0, {}};
  for (int t = 0; t < n; ++t) {
    const KrausChannel a = random_nc_qubit(rng);
    const KrausChannel b = random_nc_qubit(rng);
    for (const KrausChannel& c : {tensor(a, b), compose(a, b)}) {
      track(r, validate_cptp(c, r.tolerance).deviation);
      if (!is_nc(c).nc) ++r.failures;
    }
    const KrausChannel g1 = random_channel(2, uniform_int(rng, 1, 4), rng);
    const KrausChannel g2 = random_channel(3, uniform_int(rng, 1, 4), rng);
    track(r, validate_cptp(tensor(g1, g2), r.tolerance).deviation);
    track(r, validate_cptp(compose(g2, random_channel(3, 2, rng)), r.tolerance).deviation);
  }
  r.passed = r.max_violation <= r.tolerance && r.failures == 0;
  return r;
}

SuiteResult qubit_formation_oracle(int n, Rng& rng) {
  SuiteResult r{"lemma2", "qubit C_f closed form agrees with decomposition search", n, 0.0, 1e-4, 0, true, 0, {}};
  double min_signed = 0.0;
  for (int t = 0; t < n; ++t) {
    const DensityMatrix rho = random_density(2, t % 10 == 9 ? 1 : 2, rng);
    const double closed = c_f_qubit(rho);
    const double search = c_f_search(rho, {}, rng).objective;
    track(r, std::abs(closed - search));
    min_signed = std::min(min_signed, search - closed);
  }
  r.details["min_search_minus_closed"] = min_signed;
  r.passed = r.max_violation <= r.tolerance;
  return r;
}

SuiteResult correlated_embedding(int n, Rng& rng) {
  SuiteResult r{"lemma1", "C_f of a state equals E_f of its maximally correlated embedding", n, 0.0, 1e-9, 0, true, 0, {}};
  double max_concurrence_gap = 0.0;
  for (int t = 0; t < n; ++t) {
    const DensityMatrix rho = random_density(2, uniform_int(rng, 1, 2), rng);
    const DensityMatrix embedded = maximally_correlated_embed(rho);
    track(r, std::abs(c_f_qubit(rho) - e_f_two_qubit(embedded)));
    max_concurrence_gap = std::max(max_concurrence_gap, std::abs(wootters_concurrence(embedded) - c_l1(rho)));
  }
  const int qutrits = std::max(1, n / 25);
  double max_qutrit = 0.0;
  for (int t = 0; t < qutrits; ++t) {
    const DensityMatrix rho = random_density(3, 3, rng);
    const double ef = e_f_search(maximally_correlated_embed(rho), 3, 3, {}, rng).objective;
    const double cf = c_f_search(rho, {}, rng).objective;
    max_qutrit = std::max(max_qutrit, std::abs(ef - cf));
  }
  r.details["max_concurrence_minus_l1"] = max_concurrence_gap;
  r.details["qutrit_trials"] = qutrits;
  r.details["max_qutrit_search_gap"] = max_qutrit;
  r.details["qutrit_tolerance"] = 2e-3;
  r.passed = r.max_violation <= r.tolerance && max_qutrit <= 2e-3 && max_concurrence_gap <= 1e-9;
  return r;
}

SuiteResult bloch_equivalence(int n, Rng& rng) {
  SuiteResult r{"bloch", "is_nc agrees with the Bloch-matrix NC condition", n, 0.0, 0.0, 0, true, 0, {}};
  int nc_count = 0;
  for (int t = 0; t < n; ++t) {
    const KrausChannel ch = t % 2 == 0 ? random_nc_qubit(rng) : random_channel(2, uniform_int(rng, 1, 4), rng);
    const bool direct = is_nc(ch, 1e-9).nc;
    const bool bloch = nc_condition_bloch(qubit_bloch_matrix(ch), 1e-9);
    if (direct) ++nc_count;
    if (direct != bloch) ++r.failures;
  }
  r.max_violation = r.failures;
  r.details["nc_channels"] = nc_count;
  r.passed = r.failures == 0;
  return r;
}

SuiteResult rank_two_families(int n, Rng& rng) {
  SuiteResult r{"families", "rank-2 qubit NC families: CPTP, NC, Kraus structure, IC search", n, 0.0, 1e-12, 0, true, 0, {}};
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  int ic_checked = 0, ic_found = 0, structural = 0;
  IcSearchOptions ic_options;  // 200 starts
  for (int t = 0; t < n; ++t) {
    const double theta = angle(rng), phi = angle(rng), xi = angle(rng), eta = angle(rng);
    const KrausChannel l1 = lambda1(theta, phi, xi, eta);
    const KrausChannel l2 = lambda2(theta, phi, xi);
    track(r, validate_cptp(l1).deviation);
    track(r, validate_cptp(l2).deviation);
    if (!is_nc(l1).nc || !is_nc(l2).nc) ++structural;
    for (const auto& k : l2.kraus())
      if (!kraus_is_incoherent(k)) ++structural;
    const double product = std::sin(theta) * std::cos(theta) * std::sin(phi) * std::cos(phi);
    if (std::abs(product) >= 0.1) {
      ++ic_checked;
      if (ic_heuristic(l1, ic_options, rng).found) ++ic_found;
    }
  }
  r.failures = structural + ic_found;
  r.details["structural_failures"] = structural;
  r.details["ic_searches"] = ic_checked;
  r.details["ic_found"] = ic_found;
  r.passed = r.max_violation <= r.tolerance && r.failures == 0;
  return r;
}

SuiteResult product_gain(int n, Rng& rng) {
  SuiteResult r{"thm4", "C_r gain of a product channel on a product input is the sum of gains", n, 0.0, 1e-8, 0, true, 0, {}};
  double worst_probe = -1.0;
  for (int t = 0; t < n; ++t) {
    const KrausChannel a = random_nc_qubit(rng);
    const KrausChannel b = t % 2 == 0 ? random_nc_qubit(rng) : random_channel(2, uniform_int(rng, 1, 3), rng);
    const DensityMatrix rho1 = random_density(2, uniform_int(rng, 1, 2), rng);
    const DensityMatrix rho2 = random_density(2, uniform_int(rng, 1, 2), rng);
    const auto id = product_gain_identity(a, b, rho1, rho2, Measure::RelativeEntropy);
    track(r, std::abs(id.lhs - id.rhs));

    // Superadditivity probe: the product of the factors' best inputs seeds
    // the search on the product channel.
    const KrausChannel pa = random_channel(2, uniform_int(rng, 1, 3), rng);
    const KrausChannel pb = random_channel(2, uniform_int(rng, 1, 3), rng);
    PowerOptions factor;
    factor.starts = 2;
    factor.iterations = 30;
    const PowerEstimate ea = estimate_power(pa, Measure::RelativeEntropy, factor, rng);
    const PowerEstimate eb = estimate_power(pb, Measure::RelativeEntropy, factor, rng);
    PowerOptions joint;
    joint.starts = 0;
    joint.iterations = 5;
    joint.seeds = {DensityMatrix(tensor(ea.best_input.matrix(), eb.best_input.matrix()))};
    const PowerEstimate eab = estimate_power(tensor(pa, pb), Measure::RelativeEntropy, joint, rng);
    worst_probe = std::max(worst_probe, ea.power_lower_bound + eb.power_lower_bound - eab.power_lower_bound);
  }
  r.details["max_probe_shortfall"] = worst_probe;
  r.details["probe_tolerance"] = 1e-6;
  r.passed = r.max_violation <= r.tolerance && worst_probe <= 1e-6;
  return r;
}

DensityMatrix random_block_pure_mixture(int d, Rng& rng) {
  std::vector<int> labels(d);
  const int blocks = uniform_int(rng, 1, d);
  for (int i = 0; i < d; ++i) labels[i] = i < blocks ? i : uniform_int(rng, 0, blocks - 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  double total = 0.0;
  for (int b = 0; b < blocks; ++b) {
    std::vector<int> members;
    for (int i = 0; i < d; ++i)
      if (labels[i] == b) members.push_back(i);
    const PureState local = random_pure(static_cast<int>(members.size()), rng);
    const double w = unit(rng);
    total += w;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j < members.size(); ++j)
        rho(members[i], members[j]) += w * local.amplitudes()(i) * std::conj(local.amplitudes()(j));
  }
  return DensityMatrix(rho / total);
}

SuiteResult formation_dominates_relative_entropy(int n, Rng& rng) {
  SuiteResult r{"c5", "C_f upper bound >= C_r; equality on direct sums of pure states", n, -1.0, 1e-8, 0, true, 0, {}};
  for (int t = 0; t < n; ++t) {
    const int d = 2 + t % 3;
    const DensityMatrix rho = random_density(d, uniform_int(rng, 1, d), rng);
    track(r, c_r(rho) - c_f_search(rho, {}, rng).objective);
  }
  const int constructed = std::max(1, n / 6);
  double max_gap = 0.0;
  int rejected = 0;
  for (int t = 0; t < constructed; ++t) {
    const DensityMatrix rho = random_block_pure_mixture(2 + t % 3, rng);
    if (!direct_sum_of_pures(rho)) ++rejected;
    max_gap = std::max(max_gap, std::abs(c_f_search(rho, {}, rng).objective - c_r(rho)));
  }
  r.failures = rejected;
  r.details["equality_trials"] = constructed;
  r.details["max_equality_gap"] = max_gap;
  r.details["equality_tolerance"] = 1e-3;
  r.details["rejected_constructions"] = rejected;
  r.passed = r.max_violation <= r.tolerance && max_gap <= 1e-3 && rejected == 0;
  return r;
}

}  // namespace

SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("suite trials must be positive");
  Rng rng(seed);
  SuiteResult r = [&] {
    if (name == "thm1") return relative_entropy_monotonicity(trials, rng);
    if (name == "thm2") return qubit_formation_monotonicity(trials, rng);
    if (name == "closure") return closure(trials, rng);
    if (name == "lemma2") return qubit_formation_oracle(trials, rng);
    if (name == "lemma1") return correlated_embedding(trials, rng);
    if (name == "bloch") return bloch_equivalence(trials, rng);
    if (name == "families") return rank_two_families(trials, rng);
    if (name == "thm4") return product_gain(trials, rng);
    if (name == "c5") return formation_dominates_relative_entropy(trials, rng);
    throw DomainError("unknown suite '" + std::string(name) + "'");
  }();
  r.seed = seed;
  return r;
}

Json to_json(const SuiteResult& result) {
  return {{"name", result.name},
          {"description", result.description},
          {"trials", result.trials},
          {"max_violation", result.max_violation},
          {"tolerance", result.tolerance},
          {"failures", result.failures},
          {"passed", result.passed},
          {"seed", result.seed},
          {"details", result.details}};
}

}  // namespace coherence
