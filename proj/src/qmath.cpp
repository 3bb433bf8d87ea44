#include "coherence/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coherence/errors.hpp"

namespace coherence {

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_first, int dim_second, Subsystem keep) {
  if (dim_first <= 0 || dim_second <= 0 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_first) * dim_second) {
    throw DimensionError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square of size " +
                         std::to_string(dim_first) + "*" + std::to_string(dim_second));
  }
  if (keep == Subsystem::First) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
    for (int i = 0; i < dim_first; ++i)
      for (int j = 0; j < dim_first; ++j)
        for (int k = 0; k < dim_second; ++k) out(i, j) += m(i * dim_second + k, j * dim_second + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_second, dim_second);
  for (int k = 0; k < dim_first; ++k) out += m.block(k * dim_second, k * dim_second, dim_second, dim_second);
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
  const double err = hermiticity_error(h);
  if (err > tol) {
    throw DomainError("hermitian_eigen: matrix is not Hermitian (deviation " + std::to_string(err) + ")");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw ConvergenceError("hermitian_eigen: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f) {
  const auto eig = hermitian_eigen(h, std::max(1e-8, 1e-10 * max_abs(h)));
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(eig.eigenvalues(i));
  return eig.eigenvectors * mapped.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

RealVector psd_spectrum(const ComplexMatrix& rho) {
  RealVector ev = hermitian_eigen(rho).eigenvalues;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kEigenvalueClip) {
      throw DomainError("negative eigenvalue " + std::to_string(ev(i)) + " in a state");
    }
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return ev;
}

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const RealVector ev = psd_spectrum(rho);
  return std::max(0.0, shannon_entropy(std::span<const double>(ev.data(), static_cast<size_t>(ev.size()))));
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("relative_entropy: states have different dimensions");
  }
  const auto er = hermitian_eigen(rho);
  const auto es = hermitian_eigen(sigma);

  double rho_log_rho = 0.0;
  for (Eigen::Index i = 0; i < er.eigenvalues.size(); ++i) {
    const double p = er.eigenvalues(i);
    if (p > 0.0) rho_log_rho += p * std::log2(p);
  }

  // tr(rho log sigma) = sum_k <s_k|rho|s_k> log q_k; weight on ker(sigma) means +inf.
  double rho_log_sigma = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
    const ComplexVector sk = es.eigenvectors.col(k);
    const double weight = (sk.adjoint() * rho * sk)(0, 0).real();
    if (es.eigenvalues(k) > kSupportThreshold) {
      rho_log_sigma += weight * std::log2(es.eigenvalues(k));
    } else if (weight > kSupportThreshold) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return std::max(0.0, rho_log_rho - rho_log_sigma);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double binary_entropy(double x) {
  constexpr double slack = 1e-12;
  if (!(x >= -slack && x <= 1.0 + slack)) {
    throw DomainError("binary_entropy: argument " + std::to_string(x) + " outside [0, 1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

ComplexMatrix polar_factor(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace coherence
