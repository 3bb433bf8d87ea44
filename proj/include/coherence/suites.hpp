#pragma once

// Randomized property suites over the library: monotonicity of C_r and
// qubit C_f under NC channels, closure of NC, agreement of closed forms with
// searches, the Bloch NC condition, the rank-2 families, the product-gain
// identity and the C_f >= C_r ordering. Shared by the CLI and the tests.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/io.hpp"

namespace coherence {

struct SuiteResult {
  std::string name;
  std::string description;
  int trials = 0;
  /// Largest observed deviation in the direction the property forbids.
  double max_violation = 0.0;
  double tolerance = 0.0;
  int failures = 0;
  bool passed = true;
  std::uint64_t seed = 0;
  /// Secondary quantities, e.g. a second violation with its own tolerance.
  std::map<std::string, double> details;
};

/// thm1, thm2, closure, lemma2, lemma1, bloch, families, thm4, c5.
const std::vector<std::string>& suite_names();

/// Default trial count for a suite (matches the acceptance configuration).
int default_trials(std::string_view name);

/// Throws DomainError for an unknown name.
SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed);

Json to_json(const SuiteResult& result);

}  // namespace coherence
