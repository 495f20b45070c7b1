#pragma once

#include "gma/algebra.hpp"
#include "gma/linalg.hpp"

namespace gma {

/// Tomita-Takesaki data (S, J, Delta) of an algebra with a cyclic and
/// separating unit vector.
struct ModularData {
  AntilinearMap s;
  AntilinearMap j;
  ComplexMatrix delta;
  HermitianEig delta_eig;
  ComplexVector omega;
  /// max residual of J A J = A' and of modular-flow stability, measured
  /// at construction.
  double tomita_residual = 0.0;

  Eigen::Index dim() const { return omega.size(); }
  /// Delta^z computed in the eigenbasis of Delta.
  ComplexMatrix delta_power(cplx z) const;
};

/// Lower clamp on the spectrum of Delta; anything below is reported as
/// ill-conditioning.
inline constexpr double kDeltaFloor = 1e-14;

ModularData modular_data(const OperatorAlgebra& a, const ComplexVector& omega);
/// Same, reusing a known commutant of `a`.
ModularData modular_data(const OperatorAlgebra& a, const OperatorAlgebra& a_commutant,
                         const ComplexVector& omega);

/// Delta^{it} x Delta^{-it}
ComplexMatrix modular_flow(const ModularData& md, double t, const ComplexMatrix& x);

/// Maximal mismatch, over t in {-1, -0.5, 0, 0.5, 1}, between
/// <Omega, A sigma_z(B) Omega> continued to z = t - i, i.e.
/// <A^dagger Omega, Delta^{it} Delta B Omega>, and <Omega, sigma_t(B) A Omega>.
double kms_check(const ModularData& md, const OperatorAlgebra& a, const ComplexMatrix& x,
                 const ComplexMatrix& y);

/// max over a basis Z of the center of `a` of |J Z J - Z^dagger|.
double central_conjugation_check(const ModularData& md, const OperatorAlgebra& a);

struct SymmetryCommutation {
  double commutes_j = 0.0;
  double commutes_delta = 0.0;
};

/// Residuals |VJ - JV| and |V Delta - Delta V| for a unitary V that fixes
/// omega and normalises the algebra; throws PreconditionError naming the
/// hypothesis that fails otherwise.
SymmetryCommutation invariant_symmetry_commutation(const ModularData& md, const OperatorAlgebra& a,
                                                   const ComplexMatrix& v);

} // namespace gma
