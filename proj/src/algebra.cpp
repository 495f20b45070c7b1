#include "gma/algebra.hpp"

#include <cmath>
#include <deque>
#include <random>

#include "gma/errors.hpp"

namespace gma {

namespace {

void require_square(const ComplexMatrix& m, Eigen::Index n, const char* where) {
  if (m.rows() != n || m.cols() != n)
    throw ValidationError(std::string(where) + ": expected a " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
}

} // namespace

OperatorAlgebra::OperatorAlgebra(Eigen::Index dim_hilbert, std::vector<ComplexMatrix> basis)
    : n_(dim_hilbert) {
  if (n_ <= 0) throw ValidationError("OperatorAlgebra: Hilbert dimension must be positive");
  OrthonormalSet set(n_ * n_);
  for (const auto& b : basis) {
    require_square(b, n_, "OperatorAlgebra");
    const double nrm = b.norm();
    if (nrm > 0.0) set.add(flatten(b) / nrm, 1e-9, 1e-9);
  }
  stacked_ = set.as_matrix();
  basis_.reserve(static_cast<std::size_t>(set.size()));
  for (const auto& v : set.vectors()) basis_.push_back(unflatten(v, n_));
}

ComplexMatrix OperatorAlgebra::project(const ComplexMatrix& x) const {
  require_square(x, n_, "OperatorAlgebra::project");
  ComplexVector v = flatten(x);
  return unflatten(stacked_ * (stacked_.adjoint() * v), n_);
}

double OperatorAlgebra::membership_residual(const ComplexMatrix& x) const {
  require_square(x, n_, "OperatorAlgebra::membership_residual");
  ComplexVector v = flatten(x);
  ComplexVector r = v - stacked_ * (stacked_.adjoint() * v);
  return r.norm() / std::max(1.0, v.norm());
}

ComplexMatrix OperatorAlgebra::element(const ComplexVector& coeffs) const {
  if (coeffs.size() != dim()) throw ValidationError("OperatorAlgebra::element: wrong coefficient count");
  return unflatten(stacked_ * coeffs, n_);
}

ComplexVector OperatorAlgebra::coordinates(const ComplexMatrix& x) const {
  require_square(x, n_, "OperatorAlgebra::coordinates");
  return stacked_.adjoint() * flatten(x);
}

bool OperatorAlgebra::is_abelian(double tol) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j)
      if (max_norm(ComplexMatrix(basis_[i] * basis_[j] - basis_[j] * basis_[i])) > tol) return false;
  return true;
}

std::vector<ComplexMatrix> OperatorAlgebra::hermitian_spanning_set() const {
  std::vector<ComplexMatrix> out;
  out.reserve(2 * basis_.size());
  for (const auto& b : basis_) {
    out.push_back(0.5 * (b + b.adjoint()));
    out.push_back(cplx(0.0, -0.5) * (b - b.adjoint()));
  }
  return out;
}

OperatorAlgebra close_star_algebra(const std::vector<ComplexMatrix>& generators, Eigen::Index n) {
  if (n <= 0) throw ValidationError("close_star_algebra: Hilbert dimension must be positive");
  if (n > 64) throw ValidationError("close_star_algebra: dimension above 64 is not supported");
  std::vector<ComplexMatrix> gens;
  for (const auto& g : generators) {
    require_square(g, n, "close_star_algebra");
    const double nrm = g.norm();
    if (nrm == 0.0) continue;
    gens.push_back(g / nrm);
    gens.push_back(g.adjoint() / nrm);
  }

  OrthonormalSet span(n * n);
  std::deque<ComplexMatrix> fresh;
  auto offer = [&](const ComplexMatrix& x) {
    // generators and words are normalised, so products have norm <= 1
    if (span.add(flatten(x), 1e-9, 1e-9)) fresh.push_back(unflatten(span.vectors().back(), n));
  };
  offer(ComplexMatrix::Identity(n, n));
  for (const auto& g : gens) offer(g);

  // Every word in the generators is g * (shorter word), so left
  // multiplication of newly found directions suffices.
  const Eigen::Index cap = n * n;
  Eigen::Index rounds = 0;
  while (!fresh.empty()) {
    if (++rounds > cap * cap + 1)
      throw DefectError("close_star_algebra: iteration limit exceeded");
    ComplexMatrix w = std::move(fresh.front());
    fresh.pop_front();
    for (const auto& g : gens) {
      offer(g * w);
      if (span.size() > cap) throw DefectError("close_star_algebra: span exceeded n^2");
    }
  }
  std::vector<ComplexMatrix> basis;
  for (const auto& v : span.vectors()) basis.push_back(unflatten(v, n));
  return OperatorAlgebra(n, std::move(basis));
}

OperatorAlgebra close_star_algebra(const std::vector<ComplexMatrix>& generators) {
  if (generators.empty()) throw ValidationError("close_star_algebra: dimension unknown without generators");
  return close_star_algebra(generators, generators.front().rows());
}

OperatorAlgebra scalars(Eigen::Index n) {
  return OperatorAlgebra(n, {ComplexMatrix::Identity(n, n)});
}

OperatorAlgebra full_matrix_algebra(Eigen::Index n) {
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      basis.push_back(std::move(e));
    }
  return OperatorAlgebra(n, std::move(basis));
}

OperatorAlgebra commutant(const OperatorAlgebra& a) {
  // X -> sum_i B_i X B_i^dagger over an orthonormal basis is a positive
  // operator on (M_n, tr) whose range is exactly the commutant; its nonzero
  // eigenvalues are d_j / m_j >= 1/n for the block structure of a. The range
  // is extracted with a pivoted Cholesky factorisation.
  const Eigen::Index n = a.dim_hilbert();
  const Eigen::Index nn = n * n;
  // sum_i conj(B_i) (x) B_i, assembled from one product of the stacked basis
  const ComplexMatrix g = a.stacked().conjugate() * a.stacked().transpose();
  ComplexMatrix f(nn, nn);
  for (Eigen::Index a2 = 0; a2 < n; ++a2)
    for (Eigen::Index b2 = 0; b2 < n; ++b2)
      for (Eigen::Index a1 = 0; a1 < n; ++a1)
        for (Eigen::Index b1 = 0; b1 < n; ++b1) f(a1 * n + b1, a2 * n + b2) = g(a1 + n * a2, b1 + n * b2);

  RealVector diag = f.diagonal().real();
  const double top = diag.maxCoeff();
  std::vector<bool> used(static_cast<std::size_t>(nn), false);
  ComplexMatrix l(nn, nn);
  Eigen::Index rank = 0;
  while (rank < nn) {
    Eigen::Index pivot = -1;
    double best = 1e-9 * top;
    for (Eigen::Index j = 0; j < nn; ++j)
      if (!used[static_cast<std::size_t>(j)] && diag(j) > best) {
        best = diag(j);
        pivot = j;
      }
    if (pivot < 0) break;
    used[static_cast<std::size_t>(pivot)] = true;
    ComplexVector col = f.col(pivot);
    if (rank > 0) col.noalias() -= l.leftCols(rank) * l.row(pivot).head(rank).adjoint();
    col /= std::sqrt(best);
    l.col(rank++) = col;
    for (Eigen::Index j = 0; j < nn; ++j) diag(j) -= std::norm(col(j));
  }
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index k = 0; k < rank; ++k) basis.push_back(unflatten(l.col(k), n));
  return OperatorAlgebra(n, std::move(basis));
}

OperatorAlgebra intersection(const OperatorAlgebra& a, const OperatorAlgebra& b) {
  if (a.dim_hilbert() != b.dim_hilbert()) throw ValidationError("intersection: dimension mismatch");
  const bool a_small = a.dim() <= b.dim();
  const OperatorAlgebra& s = a_small ? a : b;
  const OperatorAlgebra& l = a_small ? b : a;
  ComplexMatrix overlap = l.stacked().adjoint() * s.stacked(); // dim_l x dim_s
  ComplexMatrix gram = overlap.adjoint() * overlap;
  gram = 0.5 * (gram + gram.adjoint());
  HermitianEig eig = hermitian_eig(gram);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) < 1.0 - 1e-8) continue;
    ComplexVector v = s.stacked() * eig.vectors.col(k);
    basis.push_back(unflatten(v, s.dim_hilbert()));
  }
  return OperatorAlgebra(a.dim_hilbert(), std::move(basis));
}

OperatorAlgebra center(const OperatorAlgebra& a) { return intersection(a, commutant(a)); }

OperatorAlgebra join(const std::vector<OperatorAlgebra>& algebras) {
  if (algebras.empty()) throw ValidationError("join: no algebras");
  const Eigen::Index n = algebras.front().dim_hilbert();
  for (const auto& a : algebras)
    if (a.dim_hilbert() != n) throw ValidationError("join: dimension mismatch");
  if (algebras.size() == 1) return algebras.front();
  // the generated algebra is its own bicommutant; word closure is far slower
  OperatorAlgebra c = commutant(algebras.front());
  for (std::size_t i = 1; i < algebras.size(); ++i) c = intersection(c, commutant(algebras[i]));
  return commutant(c);
}

std::vector<ComplexMatrix> minimal_central_projections(const OperatorAlgebra& z) {
  if (!z.is_abelian()) throw ValidationError("minimal_central_projections: algebra is not abelian");
  const Eigen::Index n = z.dim_hilbert();
  if (!z.contains_element(ComplexMatrix::Identity(n, n)))
    throw ValidationError("minimal_central_projections: algebra does not contain the identity");
  const auto herm = z.hermitian_spanning_set();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 16; ++attempt) {
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (const auto& x : herm) h += gauss(rng) * x;
    h = 0.5 * (h + h.adjoint());
    HermitianEig eig = hermitian_eig(h);
    const double spread = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    std::vector<ComplexMatrix> out;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
      if (k == n || eig.values(k) - eig.values(k - 1) > 1e-7 * spread) {
        const ComplexMatrix v = eig.vectors.middleCols(start, k - start);
        out.push_back(v * v.adjoint());
        start = k;
      }
    }
    if (static_cast<Eigen::Index>(out.size()) != z.dim()) continue;
    bool ok = true;
    for (const auto& p : out) ok = ok && z.membership_residual(p) <= 1e-8;
    if (ok) return out;
  }
  throw DefectError("minimal_central_projections: joint diagonalisation did not separate the spectrum");
}

namespace {

ComplexMatrix orbit_matrix(const OperatorAlgebra& a, const ComplexVector& v) {
  if (v.size() != a.dim_hilbert()) throw ValidationError("vector dimension does not match algebra");
  const double nrm = v.norm();
  if (nrm == 0.0) throw ValidationError("zero vector");
  ComplexMatrix k(v.size(), a.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) k.col(i) = a.basis()[static_cast<std::size_t>(i)] * v / nrm;
  return k;
}

} // namespace

bool is_cyclic(const OperatorAlgebra& a, const ComplexVector& v) {
  return numerical_rank(orbit_matrix(a, v), 1e-10) == a.dim_hilbert();
}

bool is_separating(const OperatorAlgebra& a, const OperatorAlgebra& a_commutant, const ComplexVector& v) {
  if (a.dim_hilbert() != a_commutant.dim_hilbert()) throw ValidationError("is_separating: dimension mismatch");
  return is_cyclic(a_commutant, v);
}

bool is_separating(const OperatorAlgebra& a, const ComplexVector& v) {
  return is_separating(a, commutant(a), v);
}

double containment_residual(const OperatorAlgebra& a, const OperatorAlgebra& b) {
  if (a.dim_hilbert() != b.dim_hilbert()) throw ValidationError("algebra comparison: dimension mismatch");
  double worst = 0.0;
  for (const auto& x : b.basis()) worst = std::max(worst, a.membership_residual(x));
  return worst;
}

bool algebra_contains(const OperatorAlgebra& a, const OperatorAlgebra& b, double tol) {
  return containment_residual(a, b) <= tol;
}

bool algebra_equal(const OperatorAlgebra& a, const OperatorAlgebra& b, double tol) {
  return a.dim() == b.dim() && algebra_contains(a, b, tol) && algebra_contains(b, a, tol);
}

OperatorAlgebra conjugate_algebra(const OperatorAlgebra& a, const ComplexMatrix& u) {
  require_square(u, a.dim_hilbert(), "conjugate_algebra");
  const ComplexMatrix uinv = u.inverse();
  std::vector<ComplexMatrix> basis;
  for (const auto& b : a.basis()) basis.push_back(u * b * uinv);
  return OperatorAlgebra(a.dim_hilbert(), std::move(basis));
}

OperatorAlgebra conjugate_algebra(const OperatorAlgebra& a, const AntilinearMap& j) {
  require_square(j.kernel(), a.dim_hilbert(), "conjugate_algebra");
  std::vector<ComplexMatrix> basis;
  for (const auto& b : a.basis()) basis.push_back(j.conjugate_linear(b));
  return OperatorAlgebra(a.dim_hilbert(), std::move(basis));
}

} // namespace gma
