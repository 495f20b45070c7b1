#include "gma/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gma/errors.hpp"

namespace gma {

double max_norm(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_norm(const ComplexVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double relative_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_norm(ComplexMatrix(a - b)) / std::max(1.0, max_norm(a));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_norm(ComplexMatrix(m - m.adjoint())) <= tol * std::max(1.0, max_norm(m));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix g = m.adjoint() * m;
  return max_norm(ComplexMatrix(g - ComplexMatrix::Identity(m.rows(), m.cols()))) <= tol;
}

ComplexVector flatten(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unflatten(const ComplexVector& v, Eigen::Index n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary U = diag(1, e^{-i phi}) R(theta) acting on
// columns p, q; a <- U^dagger a U, v <- v U.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag; // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx up_q = -s * std::conj(phase); // U(q,p)
  const cplx uq_q = c * std::conj(phase);  // U(q,q)

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp + up_q * akq;
    a(k, q) = s * akp + uq_q * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk + std::conj(up_q) * aqk;
    a(q, k) = s * apk + std::conj(uq_q) * aqk;
  }
  a(p, q) = a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp + up_q * vkq;
    v(k, q) = s * vkp + uq_q * vkq;
  }
}

} // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw ValidationError("hermitian_eig: matrix is not square");
  if (!is_hermitian(m, 1e-12))
    throw ValidationError("hermitian_eig: matrix is not Hermitian");
  const Eigen::Index n = m.rows();
  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

  // Sweep until the off-diagonal mass is below 1e-12 of the norm, then one
  // more sweep (quadratic convergence takes it to roundoff).
  bool polishing = false;
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off == 0.0) break;
    if (off <= 1e-12 * scale) {
      if (polishing) break;
      polishing = true;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 1e-300) jacobi_rotate(a, v, p, q);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermitianEig out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

ComplexMatrix positive_power(const HermitianEig& eig, cplx p, double tol) {
  const double top = eig.values.size() ? std::max(1.0, eig.values.cwiseAbs().maxCoeff()) : 1.0;
  const double floor = tol * top;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values(i);
    if (lam < -floor)
      throw NotPositiveError("positive_power: negative eigenvalue " + std::to_string(lam));
    if (lam <= floor && p != cplx(0.0) && p.real() <= 0.0)
      throw SingularityError("positive_power: singular matrix raised to a non-positive power");
  }
  return spectral_apply(eig, [&](double lam) -> cplx {
    if (p == cplx(0.0)) return 1.0;
    if (lam <= floor) return 0.0;
    return std::exp(p * std::log(lam));
  });
}

ComplexMatrix positive_power(const ComplexMatrix& m, cplx p, double tol) {
  return positive_power(hermitian_eig(m), p, tol);
}

bool AntilinearMap::is_antiunitary(double tol) const { return is_unitary(kernel_, tol); }

PolarParts antilinear_polar(const AntilinearMap& s, double singular_tol) {
  const ComplexMatrix& k = s.kernel();
  if (k.rows() != k.cols()) throw ValidationError("antilinear_polar: kernel is not square");
  // <Sv, Sv> = v^T K^dagger K conj(v) = v^dagger (K^dagger K)^T v
  ComplexMatrix delta = k.transpose() * k.conjugate();
  delta = 0.5 * (delta + delta.adjoint());
  HermitianEig eig = hermitian_eig(delta);
  const double top = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  if (eig.values.size() == 0 || eig.values(0) <= singular_tol * top)
    throw SingularityError("antilinear_polar: map is singular");
  ComplexMatrix inv_sqrt = spectral_apply(eig, [](double lam) -> cplx { return 1.0 / std::sqrt(lam); });
  // J = S Delta^{-1/2}; as a kernel: K conj(Delta^{-1/2})
  AntilinearMap j(k * inv_sqrt.conjugate());
  return PolarParts{std::move(j), std::move(delta), std::move(eig)};
}

std::vector<ComplexVector> kernel_basis(const ComplexMatrix& m, double tol) {
  const Eigen::Index n = m.cols();
  std::vector<ComplexVector> out;
  if (n == 0) return out;
  if (m.rows() == 0) {
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(ComplexVector::Unit(n, i));
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  const double cut = tol * std::max(1.0, top);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double sigma = j < sv.size() ? sv(j) : 0.0;
    if (sigma <= cut) out.push_back(svd.matrixV().col(j));
  }
  return out;
}

Eigen::Index numerical_rank(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

bool OrthonormalSet::add(const ComplexVector& v, double rel_tol, double abs_tol) {
  const double n0 = v.norm();
  if (n0 == 0.0) return false;
  ComplexVector w = v;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : vectors_) w -= q * q.dot(w);
  const double n1 = w.norm();
  if (n1 <= std::max(rel_tol * n0, abs_tol)) return false;
  vectors_.push_back(w / n1);
  return true;
}

ComplexVector OrthonormalSet::project(const ComplexVector& v) const {
  ComplexVector p = ComplexVector::Zero(v.size());
  for (const auto& q : vectors_) p += q * q.dot(v);
  return p;
}

double OrthonormalSet::residual(const ComplexVector& v) const { return (v - project(v)).norm(); }

ComplexMatrix OrthonormalSet::as_matrix() const {
  ComplexMatrix out(ambient_, size());
  for (Eigen::Index i = 0; i < size(); ++i) out.col(i) = vectors_[static_cast<std::size_t>(i)];
  return out;
}

} // namespace gma
