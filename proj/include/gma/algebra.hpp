#pragma once

#include <vector>

#include "gma/linalg.hpp"

namespace gma {

/// A unital *-closed subalgebra of M_n, stored as a basis orthonormal for the
/// trace inner product <A, B> = tr(A^dagger B).
class OperatorAlgebra {
public:
  /// Wraps an already orthonormal basis of a *-algebra. Only the shape is
  /// validated; use close_star_algebra() for arbitrary generators.
  OperatorAlgebra(Eigen::Index dim_hilbert, std::vector<ComplexMatrix> basis);

  Eigen::Index dim_hilbert() const { return n_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }

  /// Basis as the columns of an n^2 x dim matrix (column-major flattening).
  const ComplexMatrix& stacked() const { return stacked_; }

  /// Orthogonal projection onto the span, in the trace inner product.
  ComplexMatrix project(const ComplexMatrix& x) const;
  /// |x - P x|_F / max(1, |x|_F)
  double membership_residual(const ComplexMatrix& x) const;
  bool contains_element(const ComplexMatrix& x, double tol = kOperatorTol) const {
    return membership_residual(x) <= tol;
  }

  /// Element sum_i c_i B_i.
  ComplexMatrix element(const ComplexVector& coeffs) const;
  /// Coefficients of P x in the basis.
  ComplexVector coordinates(const ComplexMatrix& x) const;

  bool is_abelian(double tol = kOperatorTol) const;

  /// Hermitian elements spanning the algebra over the reals.
  std::vector<ComplexMatrix> hermitian_spanning_set() const;

private:
  Eigen::Index n_;
  std::vector<ComplexMatrix> basis_;
  ComplexMatrix stacked_;
};

/// Smallest unital *-subalgebra containing the generators.
OperatorAlgebra close_star_algebra(const std::vector<ComplexMatrix>& generators, Eigen::Index n);
OperatorAlgebra close_star_algebra(const std::vector<ComplexMatrix>& generators);

OperatorAlgebra scalars(Eigen::Index n);
OperatorAlgebra full_matrix_algebra(Eigen::Index n);

OperatorAlgebra commutant(const OperatorAlgebra& a);
OperatorAlgebra intersection(const OperatorAlgebra& a, const OperatorAlgebra& b);
OperatorAlgebra center(const OperatorAlgebra& a);
/// The algebra generated by the union of the two.
OperatorAlgebra join(const std::vector<OperatorAlgebra>& algebras);

/// Mutually orthogonal minimal projections of an abelian algebra, summing to
/// the identity.
std::vector<ComplexMatrix> minimal_central_projections(const OperatorAlgebra& z);

bool is_cyclic(const OperatorAlgebra& a, const ComplexVector& v);
bool is_separating(const OperatorAlgebra& a, const ComplexVector& v);
/// Same test against a precomputed commutant.
bool is_separating(const OperatorAlgebra& a, const OperatorAlgebra& a_commutant,
                   const ComplexVector& v);

/// b is a subalgebra of a.
bool algebra_contains(const OperatorAlgebra& a, const OperatorAlgebra& b, double tol = kOperatorTol);
bool algebra_equal(const OperatorAlgebra& a, const OperatorAlgebra& b, double tol = kOperatorTol);
/// max over basis elements of b of the membership residual in a.
double containment_residual(const OperatorAlgebra& a, const OperatorAlgebra& b);

/// The algebra {U X U^dagger : X in a} for unitary (or any invertible) u.
OperatorAlgebra conjugate_algebra(const OperatorAlgebra& a, const ComplexMatrix& u);
/// The algebra {J X J : X in a}.
OperatorAlgebra conjugate_algebra(const OperatorAlgebra& a, const AntilinearMap& j);

} // namespace gma
