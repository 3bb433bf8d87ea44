#include "coherence/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "coherence/errors.hpp"

namespace coherence {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("KrausChannel: empty Kraus list");
  dim_out_ = static_cast<int>(kraus_.front().rows());
  dim_in_ = static_cast<int>(kraus_.front().cols());
  if (dim_in_ == 0 || dim_out_ == 0) throw DimensionError("KrausChannel: zero-sized Kraus operator");
  for (std::size_t n = 0; n < kraus_.size(); ++n) {
    if (kraus_[n].rows() != dim_out_ || kraus_[n].cols() != dim_in_) {
      throw DimensionError("KrausChannel: operator " + std::to_string(n) + " is " +
                           std::to_string(kraus_[n].rows()) + "x" + std::to_string(kraus_[n].cols()) +
                           ", expected " + std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
    }
    if (!kraus_[n].allFinite()) throw DomainError("KrausChannel: non-finite entry in operator " + std::to_string(n));
  }
}

CptpVerdict validate_cptp(const KrausChannel& ch, double tol) {
  ComplexMatrix sum = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
  for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
  const double dev = max_abs(sum - ComplexMatrix::Identity(ch.dim_in(), ch.dim_in()));
  return {dev <= tol, dev, tol};
}

ComplexMatrix apply_to_operator(const KrausChannel& ch, const ComplexMatrix& m) {
  if (m.rows() != ch.dim_in() || m.cols() != ch.dim_in()) {
    throw DimensionError("apply: operator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", channel input dimension is " + std::to_string(ch.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus()) out.noalias() += k * m * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(apply_to_operator(ch, rho.matrix()), 1e-9);
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim_in() != b.dim_out()) throw DimensionError("compose: inner dimensions differ");
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) ops.emplace_back(ka * kb);
  return KrausChannel(std::move(ops));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) ops.emplace_back(tensor(ka, kb));
  return KrausChannel(std::move(ops));
}

KrausChannel mix(const std::vector<KrausChannel>& channels, const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size()) {
    throw DimensionError("mix: need one weight per channel");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("mix: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mix: weights do not sum to 1");
  std::vector<ComplexMatrix> ops;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (channels[c].dim_in() != channels.front().dim_in() || channels[c].dim_out() != channels.front().dim_out()) {
      throw DimensionError("mix: channels have different dimensions");
    }
    if (weights[c] == 0.0) continue;
    for (const auto& k : channels[c].kraus()) ops.emplace_back(std::sqrt(weights[c]) * k);
  }
  return KrausChannel(std::move(ops));
}

NcVerdict is_nc(const KrausChannel& ch, double tol) {
  NcVerdict v{true, std::nullopt, 0.0, tol};
  for (int i = 0; i < ch.dim_in(); ++i) {
    ComplexMatrix basis = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
    basis(i, i) = 1.0;
    ComplexMatrix image = apply_to_operator(ch, basis);
    image.diagonal().setZero();
    const double off = max_abs(image);
    v.max_offdiagonal = std::max(v.max_offdiagonal, off);
    if (off > tol && v.nc) {
      v.nc = false;
      v.witness = i;
    }
  }
  return v;
}

bool kraus_is_incoherent(const ComplexMatrix& k, double tol) {
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    int large = 0;
    for (Eigen::Index r = 0; r < k.rows(); ++r)
      if (std::abs(k(r, c)) > tol) ++large;
    if (large > 1) return false;
  }
  return true;
}

double incoherence_violation(const std::vector<ComplexMatrix>& kraus) {
  double total = 0.0;
  for (const auto& k : kraus) {
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      double first = 0.0;
      double second = 0.0;
      for (Eigen::Index r = 0; r < k.rows(); ++r) {
        const double a = std::abs(k(r, c));
        if (a > first) {
          second = first;
          first = a;
        } else if (a > second) {
          second = a;
        }
      }
      total += second;
    }
  }
  return total;
}

std::vector<ComplexMatrix> remix(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& unitary) {
  if (unitary.cols() < static_cast<Eigen::Index>(kraus.size())) throw DimensionError("remix: unitary too small");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  std::vector<ComplexMatrix> out(unitary.rows(), ComplexMatrix::Zero(rows, cols));
  for (Eigen::Index i = 0; i < unitary.rows(); ++i)
    for (std::size_t j = 0; j < kraus.size(); ++j) out[i] += unitary(i, static_cast<Eigen::Index>(j)) * kraus[j];
  return out;
}

namespace {

// Smooth surrogate of incoherence_violation: per column, the squared weight
// outside the largest entry. Returns the value and fills the Euclidean
// gradient with respect to conj(U).
double remix_surrogate(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& u, ComplexMatrix* grad) {
  const auto mixed = remix(kraus, u);
  double value = 0.0;
  if (grad) grad->setZero(u.rows(), u.cols());
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    const auto& f = mixed[i];
    ComplexMatrix masked = f;
    for (Eigen::Index c = 0; c < f.cols(); ++c) {
      Eigen::Index arg = 0;
      f.col(c).cwiseAbs2().maxCoeff(&arg);
      masked(arg, c) = 0.0;
      value += masked.col(c).squaredNorm();
    }
    if (grad) {
      for (std::size_t j = 0; j < kraus.size(); ++j) {
        (*grad)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            masked.cwiseProduct(kraus[j].conjugate()).sum();
      }
    }
  }
  return value;
}

ComplexMatrix skew_project(const ComplexMatrix& u, const ComplexMatrix& g) {
  const ComplexMatrix a = u.adjoint() * g;
  return u * (0.5 * (a - a.adjoint()));
}

}  // namespace

IcSearchResult ic_heuristic(const KrausChannel& ch, const IcSearchOptions& options, Rng& rng) {
  const auto& kraus = ch.kraus();
  const int n = std::max(static_cast<int>(kraus.size()), options.pad_to);

  IcSearchResult best{false, ComplexMatrix::Identity(n, n), 0.0, 0, options};
  best.violation = incoherence_violation(remix(kraus, best.mixing));

  for (int start = 0; start < options.starts; ++start) {
    best.starts_used = start + 1;
    ComplexMatrix u = start == 0 ? ComplexMatrix::Identity(n, n) : random_unitary(n, rng);
    ComplexMatrix grad;
    double value = remix_surrogate(kraus, u, &grad);
    double step = 1.0;
    int stalled = 0;

    for (int it = 0; it < options.iterations && value > 0.0 && stalled < 20; ++it) {
      const ComplexMatrix direction = skew_project(u, grad);
      const double slope = direction.squaredNorm();
      if (slope < 1e-30) break;
      bool accepted = false;
      for (int ls = 0; ls < 40 && !accepted; ++ls) {
        ComplexMatrix trial = polar_factor(u - step * direction);
        ComplexMatrix trial_grad;
        const double trial_value = remix_surrogate(kraus, trial, &trial_grad);
        if (trial_value <= value - 1e-4 * step * slope) {
          stalled = (value - trial_value) < 1e-10 * value ? stalled + 1 : 0;
          u = std::move(trial);
          grad = std::move(trial_grad);
          value = trial_value;
          step = std::min(step * 2.0, 10.0);
          accepted = true;
        } else {
          step *= 0.5;
        }
      }
      if (!accepted) break;
    }

    const double violation = incoherence_violation(remix(kraus, u));
    if (violation < best.violation || start == 0) {
      best.violation = violation;
      best.mixing = u;
    }
    if (best.violation <= options.tol) {
      best.found = true;
      break;
    }
  }
  return best;
}

ClassificationReport classify(const KrausChannel& ch, double tol, const IcSearchOptions& ic_options, Rng& rng) {
  ClassificationReport report{validate_cptp(ch, tol), is_nc(ch, tol), std::nullopt};
  if (report.cptp.valid) report.ic = ic_heuristic(ch, ic_options, rng);
  return report;
}

BlochAffine qubit_bloch_matrix(const KrausChannel& ch) {
  if (ch.dim_in() != 2 || ch.dim_out() != 2) throw DimensionError("qubit_bloch_matrix: channel is not a qubit channel");
  const auto& p = pauli_basis();
  BlochAffine b;
  for (int j = 0; j < 4; ++j) {
    const ComplexMatrix image = apply_to_operator(ch, p[j]);
    for (int i = 0; i < 4; ++i) b.lambda(i, j) = 0.5 * (p[i] * image).trace().real();
  }
  return b;
}

bool nc_condition_bloch(const BlochAffine& b, double tol) {
  return std::abs(b.lambda(1, 0)) <= tol && std::abs(b.lambda(2, 0)) <= tol && std::abs(b.lambda(1, 3)) <= tol &&
         std::abs(b.lambda(2, 3)) <= tol;
}

KrausChannel identity_channel(int d) { return KrausChannel({ComplexMatrix::Identity(d, d)}); }

KrausChannel dephasing_channel(int d) {
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < d; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(d, d);
    k(i, i) = 1.0;
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel unitary_channel(const ComplexMatrix& u) { return KrausChannel({u}); }

KrausChannel hadamard_channel() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return unitary_channel(h / std::sqrt(2.0));
}

KrausChannel lambda1(double theta, double phi, double xi, double eta) {
  const Complex i(0.0, 1.0);
  const double ct = std::cos(theta), st = std::sin(theta), cp = std::cos(phi), sp = std::sin(phi);
  ComplexMatrix e1(2, 2), e2(2, 2);
  e1 << std::exp(i * eta) * ct * cp, 0.0,
        -st * sp, std::exp(i * xi) * cp;
  e2 << st * cp, std::exp(i * xi) * sp,
        std::exp(-i * eta) * ct * sp, 0.0;
  return KrausChannel({e1, e2});
}

KrausChannel lambda2(double theta, double phi, double xi) {
  const Complex i(0.0, 1.0);
  ComplexMatrix e1(2, 2), e2(2, 2);
  e1 << std::cos(theta), 0.0,
        0.0, std::exp(i * xi) * std::cos(phi);
  e2 << 0.0, std::sin(phi),
        std::exp(i * xi) * std::sin(theta), 0.0;
  return KrausChannel({e1, e2});
}

KrausChannel example_channel() {
  const double r2 = std::numbers::sqrt2;
  ComplexMatrix e1(2, 2), e2(2, 2);
  e1 << 1.0, 0.0,
        -1.0, r2;
  e2 << 1.0, r2,
        1.0, 0.0;
  return KrausChannel({0.5 * e1, 0.5 * e2});
}

KrausChannel random_incoherent_channel(int d, int operators, Rng& rng) {
  if (d < 1 || operators < 1) throw DomainError("random_incoherent_channel: need d >= 1 and at least one operator");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution active(0.6);
  std::uniform_int_distribution<int> pick_op(0, operators - 1);

  // Operator n sends column c to row perm[n][c]; injectivity per operator
  // keeps sum K^dagger K diagonal, per-column normalization makes it I.
  std::vector<std::vector<int>> perm(operators, std::vector<int>(d));
  std::vector<std::vector<Complex>> value(operators, std::vector<Complex>(d, 0.0));
  for (int n = 0; n < operators; ++n) {
    std::iota(perm[n].begin(), perm[n].end(), 0);
    std::shuffle(perm[n].begin(), perm[n].end(), rng);
    for (int c = 0; c < d; ++c) {
      if (active(rng)) {
        const double re = normal(rng);
        const double im = normal(rng);
        value[n][c] = Complex(re, im);
      }
    }
  }
  for (int c = 0; c < d; ++c) {
    double norm2 = 0.0;
    for (int n = 0; n < operators; ++n) norm2 += std::norm(value[n][c]);
    if (norm2 == 0.0) {
      value[pick_op(rng)][c] = 1.0;
      norm2 = 1.0;
    }
    for (int n = 0; n < operators; ++n) value[n][c] /= std::sqrt(norm2);
  }
  std::vector<ComplexMatrix> ops;
  for (int n = 0; n < operators; ++n) {
    ComplexMatrix k = ComplexMatrix::Zero(d, d);
    for (int c = 0; c < d; ++c) k(perm[n][c], c) = value[n][c];
    if (k.cwiseAbs().maxCoeff() > 0.0) ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel(int d, int operators, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(operators) * d, d);
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  const ComplexMatrix v = polar_factor(g);
  std::vector<ComplexMatrix> ops;
  for (int n = 0; n < operators; ++n) ops.emplace_back(v.block(n * d, 0, d, d));
  return KrausChannel(std::move(ops));
}

namespace {

KrausChannel random_basic_nc_qubit(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> ops(1, 4);
  switch (kind(rng)) {
    case 0: {
      const double t = angle(rng), p = angle(rng), x = angle(rng), e = angle(rng);
      return lambda1(t, p, x, e);
    }
    case 1: {
      const double t = angle(rng), p = angle(rng), x = angle(rng);
      return lambda2(t, p, x);
    }
    default:
      return random_incoherent_channel(2, ops(rng), rng);
  }
}

}  // namespace

KrausChannel random_nc_qubit(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k = kind(rng);
  KrausChannel ch = [&] {
    if (k <= 2) return random_basic_nc_qubit(rng);
    KrausChannel a = random_basic_nc_qubit(rng);
    KrausChannel b = random_basic_nc_qubit(rng);
    if (k == 3) return compose(a, b);
    const double w = unit(rng);
    return mix({a, b}, {w, 1.0 - w});
  }();
  if (!is_nc(ch).nc) throw std::logic_error("random_nc_qubit: sampled channel is not NC");
  return ch;
}

}  // namespace coherence
