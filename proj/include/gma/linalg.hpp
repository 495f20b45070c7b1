#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gma {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for operator identities.
inline constexpr double kOperatorTol = 1e-9;

double max_norm(const ComplexMatrix& m);
double max_norm(const ComplexVector& v);

/// Largest entry modulus of `a - b`, divided by max(1, max_norm(a)).
double relative_residual(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

/// Column-major flattening; `tr(A^dagger B) == flatten(A).dot(flatten(B))`.
ComplexVector flatten(const ComplexMatrix& m);
ComplexMatrix unflatten(const ComplexVector& v, Eigen::Index n);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEig {
  RealVector values;     ///< ascending
  ComplexMatrix vectors; ///< columns are eigenvectors
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
/// Throws ValidationError when `m` is not Hermitian within 1e-12 (relative).
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// V diag(f(lambda)) V^dagger for the eigendecomposition `eig`.
template <typename F>
ComplexMatrix spectral_apply(const HermitianEig& eig, F&& f) {
  const Eigen::Index n = eig.values.size();
  ComplexVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = f(eig.values(i));
  return eig.vectors * d.asDiagonal() * eig.vectors.adjoint();
}

/// M^p for positive semidefinite M and complex exponent p (real powers,
/// imaginary powers `it`, or mixtures).
ComplexMatrix positive_power(const ComplexMatrix& m, cplx p, double tol = 1e-12);
ComplexMatrix positive_power(const HermitianEig& eig, cplx p, double tol = 1e-12);

/// An antilinear operator v -> K conj(v), conjugation taken in the standard
/// basis.
class AntilinearMap {
public:
  AntilinearMap() = default;
  explicit AntilinearMap(ComplexMatrix kernel) : kernel_(std::move(kernel)) {}

  static AntilinearMap conjugation(Eigen::Index n) {
    return AntilinearMap(ComplexMatrix::Identity(n, n));
  }

  const ComplexMatrix& kernel() const { return kernel_; }
  Eigen::Index dim() const { return kernel_.rows(); }

  ComplexVector apply(const ComplexVector& v) const { return kernel_ * v.conjugate(); }

  /// this o other, which is linear.
  ComplexMatrix compose(const AntilinearMap& other) const {
    return kernel_ * other.kernel_.conjugate();
  }
  /// this o linear
  AntilinearMap compose(const ComplexMatrix& linear) const {
    return AntilinearMap(kernel_ * linear.conjugate());
  }
  /// The linear operator this o x o this.
  ComplexMatrix conjugate_linear(const ComplexMatrix& x) const {
    return kernel_ * x.conjugate() * kernel_.conjugate();
  }

  bool is_antiunitary(double tol = 1e-9) const;

private:
  ComplexMatrix kernel_;
};

/// linear o antilinear
inline AntilinearMap compose(const ComplexMatrix& linear, const AntilinearMap& a) {
  return AntilinearMap(linear * a.kernel());
}

struct PolarParts {
  AntilinearMap j;
  ComplexMatrix delta;
  HermitianEig delta_eig;
};

/// Polar decomposition S = J Delta^{1/2} of an invertible antilinear map,
/// with Delta = S^* S.
PolarParts antilinear_polar(const AntilinearMap& s, double singular_tol = 1e-14);

/// Orthonormal basis of the null space of `m`: right singular vectors whose
/// singular value is at most tol * max(1, sigma_max).
std::vector<ComplexVector> kernel_basis(const ComplexMatrix& m, double tol);

/// Numerical rank with relative singular-value threshold.
Eigen::Index numerical_rank(const ComplexMatrix& m, double tol = 1e-10);

/// Incrementally built orthonormal set of vectors in C^d, with two-pass
/// Gram-Schmidt.
class OrthonormalSet {
public:
  explicit OrthonormalSet(Eigen::Index ambient) : ambient_(ambient) {}

  /// Adds the component of `v` orthogonal to the current span when its norm
  /// exceeds max(rel_tol * |v|, abs_tol). Returns true when the span grew.
  bool add(const ComplexVector& v, double rel_tol = 1e-9, double abs_tol = 0.0);

  /// |v - P v| for the orthogonal projector P onto the span.
  double residual(const ComplexVector& v) const;
  ComplexVector project(const ComplexVector& v) const;

  Eigen::Index size() const { return static_cast<Eigen::Index>(vectors_.size()); }
  Eigen::Index ambient() const { return ambient_; }
  const std::vector<ComplexVector>& vectors() const { return vectors_; }
  ComplexMatrix as_matrix() const;

private:
  Eigen::Index ambient_;
  std::vector<ComplexVector> vectors_;
};

} // namespace gma
