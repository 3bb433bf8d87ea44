#pragma once

// Dense complex linear algebra for small systems (d <= 16): Hermitian
// spectra, entropies in bits, norms and tensor structure.

#include <complex>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace coherence {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues in [-kEigenvalueClip, 0) are treated as numerical zeros.
inline constexpr double kEigenvalueClip = 1e-10;
/// An eigenvalue above this threshold belongs to the support of a state.
inline constexpr double kSupportThreshold = 1e-12;

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns
};

enum class Subsystem { First, Second };

ComplexMatrix dagger(const ComplexMatrix& m);

/// Kronecker product; the first factor is the slow (outer) index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out one factor of a (dim_first * dim_second)-square matrix and
/// return the factor named by `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_first, int dim_second, Subsystem keep);

/// Throws DomainError if ||h - h^dagger||_max > tol and ConvergenceError if
/// the solver does not converge.
HermitianEigen hermitian_eigen(const ComplexMatrix& h, double tol = 1e-10);

double max_abs(const ComplexMatrix& m);
double hermiticity_error(const ComplexMatrix& m);

/// f applied to the spectrum of a Hermitian matrix.
ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f);

/// Spectrum of a positive semidefinite matrix with noise-level negative
/// eigenvalues clipped to zero. Throws DomainError below -kEigenvalueClip.
RealVector psd_spectrum(const ComplexMatrix& rho);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

/// S(rho) = -tr(rho log2 rho).
double von_neumann_entropy(const ComplexMatrix& rho);

/// S(rho || sigma) in bits; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// h(x) = -x log2 x - (1-x) log2 (1-x), x in [0, 1].
double binary_entropy(double x);

/// Unitary factor U of the polar decomposition A = U P (columns orthonormal
/// when A is tall). Used as the retraction onto isometries and unitaries.
ComplexMatrix polar_factor(const ComplexMatrix& a);

}  // namespace coherence
