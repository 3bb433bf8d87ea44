#pragma once

// Physical states in a fixed incoherent basis. The incoherent basis is always
// the computational basis of the stored matrix; callers that want another
// reference basis conjugate explicitly before constructing a state.

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coherence/qmath.hpp"

namespace coherence {

using Rng = std::mt19937_64;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kPureNormTolerance = 1e-12;
inline constexpr double kBlockEdgeTolerance = 1e-9;

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Throws InvalidStateError listing every violated invariant.
  explicit DensityMatrix(ComplexMatrix matrix, double tol = kStateTolerance);

  /// Names of the invariants `m` violates (empty when valid).
  static std::vector<std::string> violations(const ComplexMatrix& m, double tol = kStateTolerance);

  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Complex operator()(int i, int j) const { return matrix_(i, j); }

 private:
  ComplexMatrix matrix_;
};

class PureState {
 public:
  /// Requires unit norm within kPureNormTolerance.
  explicit PureState(ComplexVector amplitudes);
  /// Rescales any nonzero vector to unit norm.
  static PureState normalized(const ComplexVector& v);

  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  DensityMatrix density() const;

 private:
  ComplexVector amplitudes_;
};

/// Disjoint index blocks covering {0, ..., d-1}, each sorted, ordered by
/// smallest member.
using BlockPartition = std::vector<std::vector<int>>;

DensityMatrix dephase(const DensityMatrix& rho);
bool is_incoherent(const DensityMatrix& rho, double tol = kBlockEdgeTolerance);

/// |Phi_d> = d^{-1/2} sum_i |i>.
PureState maximally_coherent(int d);
/// |Phi+> = (|00> + |11>)/sqrt(2).
PureState phi_plus();

/// rho_d -> sum_ij rho_ij |ii><jj| on C^d (x) C^d.
DensityMatrix maximally_correlated_embed(const DensityMatrix& rho);

/// Finest block partition induced by |rho_ij| > tol, returned only if each
/// block is rank one, i.e. rho is a direct sum of pure states on blocks.
std::optional<BlockPartition> direct_sum_of_pures(const DensityMatrix& rho, double tol = kBlockEdgeTolerance);

/// Normalized vector of standard complex Gaussians (unitarily invariant).
PureState random_pure(int d, Rng& rng);
/// Partial trace of random_pure(d * rank) over the rank-dimensional factor.
DensityMatrix random_density(int d, int rank, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(int d, Rng& rng);

/// (r1, r2, r3) with rho = (I + r . sigma) / 2.
std::array<double, 3> bloch_vector(const DensityMatrix& rho);
DensityMatrix from_bloch(const std::array<double, 3>& r);

/// I, X, Y, Z.
const std::array<ComplexMatrix, 4>& pauli_basis();

double von_neumann_entropy(const DensityMatrix& rho);
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace coherence
