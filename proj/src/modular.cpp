#include "gma/modular.hpp"

#include <cmath>
#include <cstdio>

#include "gma/errors.hpp"

namespace gma {

ComplexMatrix ModularData::delta_power(cplx z) const {
  return spectral_apply(delta_eig, [z](double lam) { return std::exp(z * std::log(lam)); });
}

ModularData modular_data(const OperatorAlgebra& a, const ComplexVector& omega) {
  return modular_data(a, commutant(a), omega);
}

ModularData modular_data(const OperatorAlgebra& a, const OperatorAlgebra& a_commutant,
                         const ComplexVector& omega_in) {
  const Eigen::Index n = a.dim_hilbert();
  if (omega_in.size() != n) throw ValidationError("modular_data: vector dimension mismatch");
  const double nrm = omega_in.norm();
  if (nrm == 0.0) throw ValidationError("modular_data: zero vector");
  const ComplexVector omega = omega_in / nrm;
  if (!is_cyclic(a, omega)) throw PreconditionError("modular_data: vector is not cyclic for the algebra");
  if (!is_separating(a, a_commutant, omega))
    throw PreconditionError("modular_data: vector is not separating for the algebra");
  if (a.dim() != n)
    throw IllConditionedError("modular_data: cyclic and separating vector but dim(A) != n");

  // S(B_i omega) = B_i^dagger omega; with K = [B_i omega], L = [B_i^dagger omega]
  // the kernel of S solves M conj(K) = L.
  ComplexMatrix k(n, n), l(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ComplexMatrix& b = a.basis()[static_cast<std::size_t>(i)];
    k.col(i) = b * omega;
    l.col(i) = b.adjoint() * omega;
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(k.conjugate().transpose());
  ComplexMatrix s_kernel = lu.solve(l.transpose()).transpose();
  AntilinearMap s(std::move(s_kernel));

  PolarParts polar = antilinear_polar(s, 0.0);
  const double top = std::max(1.0, polar.delta_eig.values.cwiseAbs().maxCoeff());
  if (polar.delta_eig.values(0) < kDeltaFloor * top)
    throw IllConditionedError("modular_data: modular operator has eigenvalue " +
                              std::to_string(polar.delta_eig.values(0)) + " below the clamp floor");

  ModularData md{std::move(s), std::move(polar.j), std::move(polar.delta), std::move(polar.delta_eig),
                 omega, 0.0};

  // Tomita: J A J = A' and Delta^{it} A Delta^{-it} = A.
  double worst = containment_residual(a_commutant, conjugate_algebra(a, md.j));
  for (double t : {0.3, 1.7}) {
    const ComplexMatrix u = md.delta_power(cplx(0.0, t));
    for (const auto& b : a.basis()) worst = std::max(worst, a.membership_residual(u * b * u.adjoint()));
  }
  md.tomita_residual = worst;
  if (worst > 1e-8)
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "modular_data: Tomita postcondition residual %.3e", worst);
    throw IllConditionedError(buf);
  }
  return md;
}

ComplexMatrix modular_flow(const ModularData& md, double t, const ComplexMatrix& x) {
  if (x.rows() != md.dim() || x.cols() != md.dim()) throw ValidationError("modular_flow: dimension mismatch");
  const ComplexMatrix u = md.delta_power(cplx(0.0, t));
  return u * x * u.adjoint();
}

double kms_check(const ModularData& md, const OperatorAlgebra& a, const ComplexMatrix& x,
                 const ComplexMatrix& y) {
  if (!a.contains_element(x) || !a.contains_element(y))
    throw ValidationError("kms_check: operator outside the algebra");
  const ComplexVector& omega = md.omega;
  const ComplexVector xo = x.adjoint() * omega;
  const ComplexVector yo = y * omega;
  double worst = 0.0;
  for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const cplx lhs = xo.dot(md.delta_power(cplx(1.0, t)) * yo);
    const cplx rhs = omega.dot(modular_flow(md, t, y) * x * omega);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double central_conjugation_check(const ModularData& md, const OperatorAlgebra& a) {
  const OperatorAlgebra z = center(a);
  double worst = 0.0;
  for (const auto& c : z.basis())
    worst = std::max(worst, max_norm(ComplexMatrix(md.j.conjugate_linear(c) - c.adjoint())));
  return worst;
}

SymmetryCommutation invariant_symmetry_commutation(const ModularData& md, const OperatorAlgebra& a,
                                                   const ComplexMatrix& v) {
  if (v.rows() != md.dim() || v.cols() != md.dim())
    throw ValidationError("invariant_symmetry_commutation: dimension mismatch");
  if (!is_unitary(v, 1e-9)) throw ValidationError("invariant_symmetry_commutation: operator is not unitary");
  if (max_norm(ComplexVector(v * md.omega - md.omega)) > 1e-10)
    throw PreconditionError("symmetry does not fix the distinguished vector");
  if (containment_residual(a, conjugate_algebra(a, v)) > kOperatorTol)
    throw PreconditionError("symmetry does not preserve the algebra");
  SymmetryCommutation out;
  out.commutes_j = max_norm(ComplexMatrix(v * md.j.kernel() - md.j.kernel() * v.conjugate()));
  out.commutes_delta = max_norm(ComplexMatrix(v * md.delta - md.delta * v));
  return out;
}

} // namespace gma
