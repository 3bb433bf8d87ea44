#pragma once

// Coherence-increasing power of channels: the gain C(Lambda(rho)) - C(rho),
// lower-bound estimates of its supremum over inputs, the tensor-product gain
// identity and the two-qubit superadditivity demonstration.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/channels.hpp"
#include "coherence/measures.hpp"

namespace coherence {

enum class Measure { RelativeEntropy, Formation };

std::string_view measure_name(Measure m);  // "c_r" or "c_f"
/// Accepts "c_r"/"C_r" and "c_f"/"C_f"; throws DomainError otherwise.
Measure parse_measure(std::string_view name);

struct GainOptions {
  /// Used for C_f when a state is not a qubit.
  DecompositionSearchOptions search{8, 0, 300, 1e-9};
  std::uint64_t search_seed = 0;
};

struct CoherenceGain {
  double gain;
  double before;
  double after;
  std::string before_method;  // "exact", "closed_form" or "search"
  std::string after_method;
};

/// C(Lambda(rho)) - C(rho). Searches reseed from options.search_seed on every
/// call, so the value is a deterministic function of its arguments.
CoherenceGain coherence_gain(const KrausChannel& ch, const DensityMatrix& rho, Measure measure,
                             const GainOptions& options = {});

struct PowerOptions {
  int starts = 64;
  int iterations = 500;
  /// Inputs tried before the random starts (e.g. products of factor optima).
  std::vector<DensityMatrix> seeds;
  GainOptions gain;
  double fd_step = 1e-6;
};

struct PowerEstimate {
  Measure measure;
  double best_gain;
  /// max(best_gain, 0): a lower bound on the power.
  double power_lower_bound;
  DensityMatrix best_input;
  int starts_used;
  int evaluations;
};

/// Multi-start local ascent of the gain over inputs rho = G G^dagger / tr(G G^dagger)
/// with finite-difference gradients. Incoherent basis inputs are always
/// probed, so best_gain >= 0 whenever C vanishes exactly on them.
PowerEstimate estimate_power(const KrausChannel& ch, Measure measure, const PowerOptions& options, Rng& rng);

struct ProductGainIdentity {
  double lhs;  // gain of a (x) b on rho1 (x) rho2
  double rhs;  // gain of a on rho1 plus gain of b on rho2
  /// True when lhs == rhs is guaranteed by additivity and exact evaluation
  /// (always for C_r; for C_f only when every term is a closed form).
  bool asserted;
};

ProductGainIdentity product_gain_identity(const KrausChannel& a, const KrausChannel& b, const DensityMatrix& rho1,
                                          const DensityMatrix& rho2, Measure measure, const GainOptions& options = {});

struct DemoCheck {
  std::string name;
  double value;
  double bound;
  bool passed;
};

struct SuperadditivityReport {
  DensityMatrix input;          // Phi+
  DensityMatrix output;         // (1 (x) Lambda)(Phi+)
  double output_residual;       // ||rho_out - (v1 v1^+ + v2 v2^+)/2||_max
  std::vector<double> v_residuals;  // distance of v1, v2 from the support of rho_out
  double cf_input;
  int grid;
  double delta;                 // min over the span of h(a+)/2 + h(a-)/2
  double delta_theta;
  double delta_phi;
  double cf_output_lower;       // 1 + delta
  double cf_output_search;      // upper bound
  bool cf_output_search_converged;
  std::vector<DemoCheck> checks;
};

struct DemoOptions {
  int grid = 360;
  DecompositionSearchOptions search{};
  std::uint64_t seed = 0;
};

/// min over (theta, phi) in [0, pi)^2 of h(a+)/2 + h(a-)/2 on a grid x grid
/// lattice, refined by pattern search. Returns {delta, theta, phi}.
std::array<double, 3> span_entropy_gap(int grid);

/// Identity (x) example channel on Phi+: verifies the output state, bounds
/// C_f of the output from below analytically and from above by search.
/// Throws VerificationError naming the first failed check.
SuperadditivityReport superadditivity_demo(const DemoOptions& options = {});

}  // namespace coherence
