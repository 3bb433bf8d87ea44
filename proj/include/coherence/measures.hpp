#pragma once

// Coherence quantifiers (relative entropy, l1, trace distance, formation)
// and entanglement of formation, all in bits.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

/// C_r(rho) = S(Delta(rho)) - S(rho).
double c_r(const DensityMatrix& rho);

/// Sum of off-diagonal moduli.
double c_l1(const DensityMatrix& rho);

struct TraceDistanceOptions {
  int restarts = 10;
  int iterations = 2000;
};

/// min over incoherent sigma of ||rho - sigma||_tr. Closed form (= c_l1) for
/// qubits; projected subgradient descent over the probability simplex
/// otherwise, never above the feasible value ||rho - Delta(rho)||_tr.
double c_tr(const DensityMatrix& rho, const TraceDistanceOptions& options = {}, std::uint64_t seed = 0);

/// h((1 + sqrt(1 - C_l1^2)) / 2) for a qubit.
double c_f_qubit(const DensityMatrix& rho);

struct DecompositionSearchOptions {
  int starts = 32;
  /// Number of pure components m; 0 selects rank^2.
  int components = 0;
  int iterations = 1000;
  /// Riemannian gradient norm below which a start counts as converged.
  double gradient_tol = 1e-9;
};

/// A pure-state decomposition {p_k, psi_k} found by search. Its objective
/// is an upper bound on the minimum being searched for.
struct DecompositionSearchResult {
  std::vector<double> weights;
  std::vector<PureState> components;
  double objective = 0.0;
  bool converged = false;
  int starts_used = 0;
};

/// Upper bound on C_f by minimizing sum_k p_k S(Delta(psi_k)) over
/// decompositions rho = sum_k p_k |psi_k><psi_k|. Decompositions with m
/// components are parameterized by m x r isometries acting on the
/// sqrt(eigenvalue)-scaled eigenvectors (r = rank).
DecompositionSearchResult c_f_search(const DensityMatrix& rho, const DecompositionSearchOptions& options, Rng& rng);

/// Upper bound on E_f over the cut C^{dim_first} (x) C^{dim_second}, with
/// objective sum_k p_k S(tr_A Psi_k).
DecompositionSearchResult e_f_search(const DensityMatrix& rho, int dim_first, int dim_second,
                                     const DecompositionSearchOptions& options, Rng& rng);

struct FormationValue {
  double value;
  std::string method;  // "closed_form" or "search"
  bool converged;
};

/// Closed form for qubits, search (an upper bound) otherwise.
FormationValue c_f(const DensityMatrix& rho, const DecompositionSearchOptions& options, Rng& rng);

/// Two-qubit concurrence max(0, mu1 - mu2 - mu3 - mu4).
double wootters_concurrence(const DensityMatrix& rho);
/// h((1 + sqrt(1 - C^2)) / 2) with C the concurrence.
double e_f_two_qubit(const DensityMatrix& rho);

/// Orthonormal basis {v1, v2} of the support of (1 (x) Lambda)(Phi+) for the
/// example channel.
std::pair<PureState, PureState> example_output_basis();

/// S(Delta(psi)) for psi = cos(theta) v1 + sin(theta) e^{i phi} v2 through the
/// closed form 1 + h(a+)/2 + h(a-)/2. Throws VerificationError if the direct
/// dephased entropy of psi disagrees by more than 1e-10.
double span_entropy_closed_form(double theta, double phi);

/// The same quantity evaluated directly from the amplitudes of psi.
double span_entropy_direct(double theta, double phi);

}  // namespace coherence
