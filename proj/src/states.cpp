#include "coherence/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coherence/errors.hpp"

namespace coherence {

std::vector<std::string> DensityMatrix::violations(const ComplexMatrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) return {"square"};
  if (!m.allFinite()) return {"finite"};
  std::vector<std::string> out;
  if (hermiticity_error(m) > tol) out.emplace_back("hermitian");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() < -tol) out.emplace_back("positive");
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) out.emplace_back("unit_trace");
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double tol) {
  auto bad = violations(matrix, tol);
  if (!bad.empty()) {
    std::string msg = "invalid density matrix, violated:";
    for (const auto& v : bad) msg += " " + v;
    throw InvalidStateError(msg, std::move(bad));
  }
  matrix_ = 0.5 * (matrix + matrix.adjoint());
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("PureState: empty amplitude vector");
  if (std::abs(amplitudes_.norm() - 1.0) > kPureNormTolerance) {
    throw DomainError("PureState: norm " + std::to_string(amplitudes_.norm()) + " is not 1");
  }
}

PureState PureState::normalized(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw DomainError("PureState: cannot normalize a zero vector");
  return PureState(v / n);
}

DensityMatrix PureState::density() const { return DensityMatrix(amplitudes_ * amplitudes_.adjoint()); }

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix(ComplexMatrix(rho.matrix().diagonal().asDiagonal()));
}

bool is_incoherent(const DensityMatrix& rho, double tol) {
  ComplexMatrix off = rho.matrix();
  off.diagonal().setZero();
  return max_abs(off) <= tol;
}

PureState maximally_coherent(int d) {
  if (d < 2) throw DomainError("maximally_coherent: dimension must be at least 2");
  return PureState(ComplexVector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
}

PureState phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(v);
}

DensityMatrix maximally_correlated_embed(const DensityMatrix& rho) {
  const int d = rho.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i * d + i, j * d + j) = rho(i, j);
  return DensityMatrix(out);
}

std::optional<BlockPartition> direct_sum_of_pures(const DensityMatrix& rho, double tol) {
  const int d = rho.dim();
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(rho(i, j)) > tol) parent[find(i)] = find(j);

  BlockPartition blocks;
  std::vector<int> block_of_root(d, -1);
  for (int i = 0; i < d; ++i) {
    const int r = find(i);
    if (block_of_root[r] < 0) {
      block_of_root[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of_root[r]].push_back(i);
  }

  for (const auto& block : blocks) {
    if (block.size() < 2) continue;
    const auto n = static_cast<Eigen::Index>(block.size());
    ComplexMatrix sub(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) sub(a, b) = rho(block[a], block[b]);
    const RealVector ev = hermitian_eigen(sub).eigenvalues;
    if (ev(n - 2) > tol) return std::nullopt;
  }
  return blocks;
}

namespace {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

PureState random_pure(int d, Rng& rng) {
  if (d < 1) throw DomainError("random_pure: dimension must be positive");
  return PureState::normalized(ginibre(d, 1, rng).col(0));
}

DensityMatrix random_density(int d, int rank, Rng& rng) {
  if (d < 1 || rank < 1 || rank > d) {
    throw DomainError("random_density: rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
  }
  const PureState psi = random_pure(d * rank, rng);
  const ComplexMatrix joint = psi.amplitudes() * psi.amplitudes().adjoint();
  ComplexMatrix reduced = partial_trace(joint, d, rank, Subsystem::First);
  reduced /= reduced.trace().real();
  return DensityMatrix(reduced);
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

const std::array<ComplexMatrix, 4>& pauli_basis() {
  static const std::array<ComplexMatrix, 4> basis = [] {
    const Complex i(0.0, 1.0);
    std::array<ComplexMatrix, 4> p;
    p[0] = ComplexMatrix::Identity(2, 2);
    p[1] = ComplexMatrix::Zero(2, 2);
    p[1](0, 1) = p[1](1, 0) = 1.0;
    p[2] = ComplexMatrix::Zero(2, 2);
    p[2](0, 1) = -i;
    p[2](1, 0) = i;
    p[3] = ComplexMatrix::Zero(2, 2);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return basis;
}

std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionError("bloch_vector: state is not a qubit");
  const auto& p = pauli_basis();
  return {(rho.matrix() * p[1]).trace().real(), (rho.matrix() * p[2]).trace().real(),
          (rho.matrix() * p[3]).trace().real()};
}

DensityMatrix from_bloch(const std::array<double, 3>& r) {
  const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  if (len > 1.0 + 1e-12) throw DomainError("from_bloch: Bloch vector length " + std::to_string(len) + " exceeds 1");
  const auto& p = pauli_basis();
  return DensityMatrix(0.5 * (p[0] + r[0] * p[1] + r[1] * p[2] + r[2] * p[3]));
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy(rho.matrix(), sigma.matrix());
}

}  // namespace coherence
