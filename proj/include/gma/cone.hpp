#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/LU>

#include "gma/modular.hpp"
#include "gma/net.hpp"
#include "gma/report.hpp"

namespace gma {

/// Hermiticity tolerance and eigenvalue floor of membership witnesses, both
/// relative to |v|.
inline constexpr double kWitnessHermitianTol = 1e-8;
inline constexpr double kWitnessEigenFloor = 1e-8;
inline constexpr double kMaxConeVectorNorm = 1e6;

/// The cone { Delta^{1/4} A Omega : A >= 0 in the algebra }.
class NaturalCone {
public:
  NaturalCone(OperatorAlgebra algebra, ModularData md);

  const OperatorAlgebra& algebra() const { return algebra_; }
  const ModularData& modular() const { return md_; }
  const ComplexMatrix& delta_quarter() const { return dq_; }
  const ComplexMatrix& delta_minus_quarter() const { return dmq_; }
  Eigen::Index dim() const { return md_.dim(); }

  /// The unique X in the algebra with X Omega = w.
  ComplexMatrix reconstruct(const ComplexVector& w) const;
  /// Delta^{1/4} A Omega
  ComplexVector image(const ComplexMatrix& a) const { return dq_ * (a * md_.omega); }
  /// Random member with unit norm; the witness is B B^dag + shift.
  ComplexVector sample_member(std::uint64_t seed, double shift = 0.0) const;

private:
  OperatorAlgebra algebra_;
  ModularData md_;
  ComplexMatrix dq_, dmq_;
  Eigen::PartialPivLU<ComplexMatrix> lu_;
};

struct ConeMembership {
  bool member = false;
  std::optional<ComplexMatrix> witness;
  double min_eigenvalue = 0.0;
  double hermitian_residual = 0.0;
};

ConeMembership cone_membership(const NaturalCone& c, const ComplexVector& v);

/// A member u whose pairing <u, v> lies outside [0, inf), or nothing when v
/// is in the dual cone.
struct Separation {
  ComplexVector u;
  cplx pairing;
};
std::optional<Separation> separation_witness(const NaturalCone& c, const ComplexVector& v);

/// Dual-cone test computed from pairings alone, without the membership
/// witness.
bool in_dual_cone(const NaturalCone& c, const ComplexVector& v);

/// Member pairings, separation of non-members, agreement of membership with
/// the dual test, pointedness.
CheckResult cone_selfdual_check(const NaturalCone& c, int samples, std::uint64_t seed);

/// <v, A J A Omega>
cplx positivity_form(const NaturalCone& c, const ComplexVector& v, const ComplexMatrix& a);
/// max over sampled A of -Re <v, A J A Omega>; no membership precondition.
double positivity_form_violation(const NaturalCone& c, const ComplexVector& v, int samples, std::uint64_t seed);
/// Same, for a member v; PreconditionError otherwise.
double positivity_form_check(const NaturalCone& c, const ComplexVector& v, int samples, std::uint64_t seed);

using ConeFamily = std::vector<NaturalCone>;

/// One cone per wedge of the net; PreconditionError when modular data is
/// missing.
ConeFamily net_cones(const ToyNet& net, const NetModular& mod);

struct IntersectionMembership {
  bool member = false;
  std::vector<bool> per_cone;
};
IntersectionMembership intersection_membership(const ConeFamily& f, const ComplexVector& v);

/// Intersection cone on the span of { Z Omega0 : Z central }: membership
/// agrees with nonnegative block coefficients, members are fixed by every
/// J_W. Also reports whether the intersection reaches outside that span.
CheckResult p0_structure_check(const ToyNet& net, const NetModular& mod, int samples, std::uint64_t seed);

/// |J^v - J| for the modular data recomputed from the normalised member v.
double same_conjugation_check(const NaturalCone& c, const ComplexVector& v);

struct RigidityResult {
  std::vector<double> delta; ///< |Delta_W^{Z Omega0} - Delta_W| per wedge
  std::vector<double> j_commutes;
  std::vector<double> delta_commutes; ///< |[Z, Delta_W^{1/2}]|
  double max() const;
};

/// Z central and positive definite; PreconditionError otherwise.
RigidityResult delta_rigidity(const ToyNet& net, const NetModular& mod, const ComplexMatrix& z);
CheckResult delta_rigidity_check(const ToyNet& net, const NetModular& mod, const ComplexMatrix& z,
                                 double tol = 1e-7);

/// Random positive definite element of the center of the global algebra.
ComplexMatrix random_central_positive(const ToyNet& net, std::uint64_t seed);

} // namespace gma
