#pragma once

// Quantum channels as Kraus lists, with the coherence-non-generating (NC)
// test, an incoherent-operation (IC) search, the qubit Bloch representation
// and the rank-2 qubit NC families.

#include <optional>
#include <vector>

#include "coherence/states.hpp"

namespace coherence {

inline constexpr double kCptpTolerance = 1e-10;
inline constexpr double kNcTolerance = 1e-9;

class KrausChannel {
 public:
  /// Each operator must be dim_out x dim_in and the list non-empty. Trace
  /// preservation is not enforced here; see validate_cptp.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus);

  int dim_in() const noexcept { return dim_in_; }
  int dim_out() const noexcept { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  std::size_t size() const noexcept { return kraus_.size(); }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// [lambda_ij], i, j = 0..3, acting on (1, r1, r2, r3).
struct BlochAffine {
  Eigen::Matrix4d lambda;
};

struct CptpVerdict {
  bool valid;
  double deviation;  // ||sum K^dagger K - I||_max
  double tol;
};

struct NcVerdict {
  bool nc;
  std::optional<int> witness;  // basis index i whose image is coherent
  double max_offdiagonal;      // largest off-diagonal modulus over all images
  double tol;
};

struct IcSearchOptions {
  int starts = 200;
  int iterations = 500;
  double tol = 1e-7;
  /// Pad the Kraus list with zero operators up to this length before
  /// remixing (0 keeps the list length).
  int pad_to = 0;
};

struct IcSearchResult {
  bool found;
  ComplexMatrix mixing;  // U with F_i = sum_j U_ij K_j (best found)
  double violation;      // incoherence violation of the remixed list
  int starts_used;
  IcSearchOptions options;
};

struct ClassificationReport {
  CptpVerdict cptp;
  NcVerdict nc;
  /// Present only for trace-preserving channels.
  std::optional<IcSearchResult> ic;
};

CptpVerdict validate_cptp(const KrausChannel& ch, double tol = kCptpTolerance);

/// sum_n K_n M K_n^dagger for an arbitrary operator M.
ComplexMatrix apply_to_operator(const KrausChannel& ch, const ComplexMatrix& m);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// a o b: b acts first.
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);
/// sum_k p_k Lambda_k via concatenation of sqrt(p_k)-scaled Kraus lists.
KrausChannel mix(const std::vector<KrausChannel>& channels, const std::vector<double>& weights);

/// A channel maps every incoherent state to an incoherent state iff it maps
/// every |i><i| to a diagonal matrix: incoherent states are convex
/// combinations of the |i><i| and the channel is linear.
NcVerdict is_nc(const KrausChannel& ch, double tol = kNcTolerance);

/// Every column carries at most one entry of modulus > tol, i.e. K maps each
/// |i> to a multiple of a basis vector.
bool kraus_is_incoherent(const ComplexMatrix& k, double tol = kNcTolerance);

/// Sum over operators and columns of the second-largest entry modulus.
double incoherence_violation(const std::vector<ComplexMatrix>& kraus);

/// Remix the Kraus list by a unitary: F_i = sum_j U_ij K_j.
std::vector<ComplexMatrix> remix(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& unitary);

/// Multi-start descent over unitary remixings of the Kraus list looking for
/// an all-incoherent decomposition. `found == false` is evidence only.
IcSearchResult ic_heuristic(const KrausChannel& ch, const IcSearchOptions& options, Rng& rng);

/// CPTP check, NC test with witness, and the IC search on valid channels.
ClassificationReport classify(const KrausChannel& ch, double tol, const IcSearchOptions& ic_options, Rng& rng);

BlochAffine qubit_bloch_matrix(const KrausChannel& ch);
/// lambda_10 = lambda_20 = lambda_13 = lambda_23 = 0 within tol.
bool nc_condition_bloch(const BlochAffine& b, double tol = kNcTolerance);

KrausChannel identity_channel(int d);
/// Kraus operators |i><i|.
KrausChannel dephasing_channel(int d);
KrausChannel unitary_channel(const ComplexMatrix& u);
KrausChannel hadamard_channel();

/// Rank-2 qubit NC family with non-incoherent Kraus operators in general.
KrausChannel lambda1(double theta, double phi, double xi, double eta);
/// Rank-2 qubit NC family with incoherent Kraus operators.
KrausChannel lambda2(double theta, double phi, double xi);
/// E1 = (1 0; -1 sqrt2)/2, E2 = (1 sqrt2; 1 0)/2.
KrausChannel example_channel();

/// Random channel whose Kraus operators are all incoherent.
KrausChannel random_incoherent_channel(int d, int operators, Rng& rng);
/// Random CPTP map from a Haar-like isometry; generically not NC.
KrausChannel random_channel(int d, int operators, Rng& rng);
/// Random qubit NC channel: a family member, an incoherent-Kraus channel, or
/// a composition or mixture of those.
KrausChannel random_nc_qubit(Rng& rng);

}  // namespace coherence
