#include "coherence/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "coherence/errors.hpp"

namespace coherence {

double c_r(const DensityMatrix& rho) {
  return std::max(0.0, von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho));
}

double c_l1(const DensityMatrix& rho) {
  double sum = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return sum;
}

namespace {

// Euclidean projection onto {q : q_i >= 0, sum q_i = 1}.
RealVector project_to_simplex(const RealVector& v) {
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) shift = t;
  }
  return (v.array() - shift).max(0.0).matrix();
}

double distance_to_diagonal(const ComplexMatrix& rho, const RealVector& q, RealVector* subgradient) {
  ComplexMatrix diff = rho;
  diff.diagonal() -= q.cast<Complex>();
  const auto eig = hermitian_eigen(diff, 1e-8);
  if (subgradient) {
    // d||rho - diag(q)||_tr / dq_i = -(sign(rho - diag q))_ii
    const RealVector signs = eig.eigenvalues.unaryExpr([](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
    subgradient->resize(q.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < signs.size(); ++k) s += signs(k) * std::norm(eig.eigenvectors(i, k));
      (*subgradient)(i) = -s;
    }
  }
  return eig.eigenvalues.cwiseAbs().sum();
}

}  // namespace

double c_tr(const DensityMatrix& rho, const TraceDistanceOptions& options, std::uint64_t seed) {
  if (rho.dim() == 2) return c_l1(rho);
  const ComplexMatrix& m = rho.matrix();
  const RealVector diag = m.diagonal().real();
  double best = distance_to_diagonal(m, diag, nullptr);

  Rng rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int restart = 0; restart <= options.restarts; ++restart) {
    RealVector q = diag;
    if (restart > 0) {
      for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = expo(rng);
      q /= q.sum();
    }
    RealVector g;
    const double initial = distance_to_diagonal(m, q, &g);
    best = std::min(best, initial);
    const double scale = std::max(initial, 1e-3);
    for (int it = 1; it <= options.iterations; ++it) {
      const double gnorm = g.norm();
      if (gnorm < 1e-14) break;
      q = project_to_simplex(q - (scale / std::sqrt(static_cast<double>(it))) * g / gnorm);
      best = std::min(best, distance_to_diagonal(m, q, &g));
    }
  }
  return best;
}

double c_f_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionError("c_f_qubit: state is not a qubit");
  const double l1 = std::min(1.0, c_l1(rho));
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - l1 * l1))));
}

namespace {

constexpr double kLogFloor = 1e-300;

double neg_xlogx(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

// Objective over unnormalized components: rows of `x` (m x D) are the vectors
// sqrt(p_k) psi_k. Returns sum_k p_k S(...) and, when requested, the gradient
// with respect to conj(x).
using ComponentObjective = std::function<double(const ComplexMatrix& x, ComplexMatrix* grad)>;

double dephased_objective(const ComplexMatrix& x, ComplexMatrix* grad) {
  double value = 0.0;
  if (grad) grad->resize(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const RealVector a = x.row(j).cwiseAbs2().transpose();
    const double p = a.sum();
    double row = -neg_xlogx(p);
    for (Eigen::Index i = 0; i < a.size(); ++i) row += neg_xlogx(a(i));
    value += row;
    if (grad) {
      const double log_p = std::log2(std::max(p, kLogFloor));
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        (*grad)(j, i) = a(i) > 0.0 ? (log_p - std::log2(std::max(a(i), kLogFloor))) * x(j, i) : Complex(0.0);
      }
    }
  }
  return value;
}

ComponentObjective reduced_objective(int dim_first, int dim_second) {
  return [dim_first, dim_second](const ComplexMatrix& x, ComplexMatrix* grad) {
    double value = 0.0;
    if (grad) grad->resize(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
      // Row j as a dim_first x dim_second coefficient matrix M; the reduced
      // state on either factor has the spectrum of M M^dagger.
      ComplexMatrix mat(dim_first, dim_second);
      for (int a = 0; a < dim_first; ++a)
        for (int b = 0; b < dim_second; ++b) mat(a, b) = x(j, a * dim_second + b);
      const ComplexMatrix gram = mat * mat.adjoint();
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
      const RealVector ev = solver.eigenvalues().cwiseMax(0.0);
      const double p = ev.sum();
      double row = -neg_xlogx(p);
      for (Eigen::Index s = 0; s < ev.size(); ++s) row += neg_xlogx(ev(s));
      value += row;
      if (grad) {
        const double log_p = std::log2(std::max(p, kLogFloor));
        RealVector coeff(ev.size());
        for (Eigen::Index s = 0; s < ev.size(); ++s) coeff(s) = log_p - std::log2(std::max(ev(s), kLogFloor));
        const ComplexMatrix& v = solver.eigenvectors();
        const ComplexMatrix gmat = v * coeff.cast<Complex>().asDiagonal() * v.adjoint() * mat;
        for (int a = 0; a < dim_first; ++a)
          for (int b = 0; b < dim_second; ++b) (*grad)(j, a * dim_second + b) = gmat(a, b);
      }
    }
    return value;
  };
}

ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  return polar_factor(g);
}

struct StartOutcome {
  ComplexMatrix isometry;
  double value;
  bool converged;
};

// Riemannian gradient descent on the Stiefel manifold {U : U^dagger U = I}
// with polar retraction and Armijo backtracking.
StartOutcome descend(const ComponentObjective& objective, const ComplexMatrix& w_t, ComplexMatrix u,
                     const DecompositionSearchOptions& options) {
  ComplexMatrix grad_x;
  auto evaluate = [&](const ComplexMatrix& iso, ComplexMatrix* grad_u) {
    const ComplexMatrix x = iso * w_t;
    const double v = objective(x, grad_u ? &grad_x : nullptr);
    if (grad_u) *grad_u = grad_x * w_t.adjoint();
    return v;
  };
  auto riemannian = [](const ComplexMatrix& iso, const ComplexMatrix& g) {
    const ComplexMatrix a = iso.adjoint() * g;
    return ComplexMatrix(g - iso * (0.5 * (a + a.adjoint())));
  };

  ComplexMatrix grad;
  double value = evaluate(u, &grad);
  ComplexMatrix direction = riemannian(u, grad);
  double step = 0.5;
  bool converged = false;
  int stalled = 0;

  for (int it = 0; it < options.iterations; ++it) {
    const double slope = direction.squaredNorm();
    if (std::sqrt(slope) < options.gradient_tol) {
      converged = true;
      break;
    }
    bool accepted = false;
    for (int ls = 0; ls < 50 && !accepted; ++ls) {
      ComplexMatrix trial = polar_factor(u - step * direction);
      ComplexMatrix trial_grad;
      const double trial_value = evaluate(trial, &trial_grad);
      if (trial_value <= value - 1e-4 * step * slope) {
        stalled = value - trial_value < 1e-15 ? stalled + 1 : 0;
        u = std::move(trial);
        value = trial_value;
        grad = std::move(trial_grad);
        direction = riemannian(u, grad);
        step = std::min(step * 2.0, 1e3);
        accepted = true;
      } else {
        step *= 0.5;
      }
    }
    if (!accepted || stalled >= 25) {
      converged = true;
      break;
    }
  }
  return {std::move(u), value, converged};
}

DecompositionSearchResult decomposition_search(const DensityMatrix& rho, const ComponentObjective& objective,
                                               const DecompositionSearchOptions& options, Rng& rng) {
  const auto eig = hermitian_eigen(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = eig.eigenvalues.size() - 1; k >= 0; --k)
    if (eig.eigenvalues(k) > kSupportThreshold) support.push_back(k);
  const auto rank = static_cast<Eigen::Index>(support.size());

  ComplexMatrix w(rho.dim(), rank);
  for (Eigen::Index c = 0; c < rank; ++c)
    w.col(c) = std::sqrt(eig.eigenvalues(support[c])) * eig.eigenvectors.col(support[c]);
  const ComplexMatrix w_t = w.transpose();

  const Eigen::Index m = options.components > 0 ? options.components : rank * rank;
  if (m < rank) {
    throw DomainError("decomposition search: " + std::to_string(m) + " components cannot represent rank " +
                      std::to_string(rank));
  }

  StartOutcome best{ComplexMatrix(), std::numeric_limits<double>::infinity(), false};
  const int starts = std::max(1, options.starts);
  for (int start = 0; start < starts; ++start) {
    ComplexMatrix u0 = start == 0 ? ComplexMatrix(ComplexMatrix::Identity(m, rank)) : random_isometry(m, rank, rng);
    StartOutcome out = descend(objective, w_t, std::move(u0), options);
    if (out.value < best.value) best = std::move(out);
  }

  DecompositionSearchResult result;
  result.starts_used = starts;
  result.converged = best.converged;
  const ComplexMatrix x = best.isometry * w_t;
  double total = 0.0;
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const double p = x.row(j).squaredNorm();
    if (p <= 1e-14) continue;
    result.weights.push_back(p);
    result.components.push_back(PureState::normalized(x.row(j).transpose()));
    total += p;
  }
  for (double& p : result.weights) p /= total;
  result.objective = objective(x, nullptr);
  return result;
}

}  // namespace

DecompositionSearchResult c_f_search(const DensityMatrix& rho, const DecompositionSearchOptions& options, Rng& rng) {
  return decomposition_search(rho, dephased_objective, options, rng);
}

DecompositionSearchResult e_f_search(const DensityMatrix& rho, int dim_first, int dim_second,
                                     const DecompositionSearchOptions& options, Rng& rng) {
  if (dim_first < 1 || dim_second < 1 || dim_first * dim_second != rho.dim()) {
    throw DimensionError("e_f_search: dimension " + std::to_string(rho.dim()) + " does not factor as " +
                         std::to_string(dim_first) + "*" + std::to_string(dim_second));
  }
  return decomposition_search(rho, reduced_objective(dim_first, dim_second), options, rng);
}

FormationValue c_f(const DensityMatrix& rho, const DecompositionSearchOptions& options, Rng& rng) {
  if (rho.dim() == 2) return {c_f_qubit(rho), "closed_form", true};
  const auto r = c_f_search(rho, options, rng);
  return {r.objective, "search", r.converged};
}

double wootters_concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("wootters_concurrence: state is not a two-qubit state");
  // With rho = W W^dagger, the mu_k are the singular values of
  // W^T (sigma_y x sigma_y) W, which avoids square roots of near-zero
  // eigenvalues of rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
  const auto eig = hermitian_eigen(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < 4; ++k)
    if (eig.eigenvalues(k) > kSupportThreshold) support.push_back(k);
  ComplexMatrix w(4, static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c)
    w.col(static_cast<Eigen::Index>(c)) = std::sqrt(eig.eigenvalues(support[c])) * eig.eigenvectors.col(support[c]);
  const auto& p = pauli_basis();
  const ComplexMatrix tau = w.transpose() * tensor(p[2], p[2]) * w;
  std::vector<double> mu(4, 0.0);
  const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(tau).singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) mu[k] = sv(k);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double e_f_two_qubit(const DensityMatrix& rho) {
  const double c = std::min(1.0, wootters_concurrence(rho));
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

std::pair<PureState, PureState> example_output_basis() {
  const double s = std::sin(std::numbers::pi / 8.0);
  const double c = std::cos(std::numbers::pi / 8.0);
  const double k = 1.0 / std::numbers::sqrt2;
  ComplexVector v1(4), v2(4);
  v1 << k * s, k * c, k * c, -k * s;
  v2 << k * c, -k * s, k * s, k * c;
  return {PureState(v1), PureState(v2)};
}

double span_entropy_direct(double theta, double phi) {
  const auto [v1, v2] = example_output_basis();
  const ComplexVector psi =
      std::cos(theta) * v1.amplitudes() + std::sin(theta) * std::polar(1.0, phi) * v2.amplitudes();
  const RealVector probs = psi.cwiseAbs2();
  return shannon_entropy(std::span<const double>(probs.data(), static_cast<std::size_t>(probs.size())));
}

double span_entropy_closed_form(double theta, double phi) {
  const double s = std::sin(std::numbers::pi / 8.0);
  const double c = std::cos(std::numbers::pi / 8.0);
  const Complex phase = std::polar(1.0, phi);
  const double a_plus = std::norm(std::cos(theta) * s + std::sin(theta) * c * phase);
  const double a_minus = std::norm(std::cos(theta) * s - std::sin(theta) * c * phase);
  const double closed = 1.0 + 0.5 * binary_entropy(a_plus) + 0.5 * binary_entropy(a_minus);
  const double direct = span_entropy_direct(theta, phi);
  if (std::abs(closed - direct) > 1e-10) {
    throw VerificationError("span entropy closed form " + std::to_string(closed) + " disagrees with direct value " +
                            std::to_string(direct));
  }
  return closed;
}

}  // namespace coherence
