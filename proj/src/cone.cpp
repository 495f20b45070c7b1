#include "gma/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "gma/errors.hpp"

namespace gma {

namespace {

ComplexVector gaussian_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

ComplexMatrix random_element(const OperatorAlgebra& a, std::mt19937_64& rng) {
  ComplexMatrix x = a.element(gaussian_vector(rng, a.dim()));
  return x / x.norm();
}

ComplexMatrix random_positive(const OperatorAlgebra& a, std::mt19937_64& rng) {
  const ComplexMatrix b = random_element(a, rng);
  ComplexMatrix p = b * b.adjoint();
  return 0.5 * (p + p.adjoint());
}

// spectral projection of a Hermitian element onto eigenvalues passing `keep`
template <typename F>
ComplexMatrix spectral_projection(const HermitianEig& e, F&& keep) {
  return spectral_apply(e, [&](double x) { return keep(x) ? cplx(1.0) : cplx(0.0); });
}

ComplexMatrix herm(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

} // namespace

NaturalCone::NaturalCone(OperatorAlgebra algebra, ModularData md) : algebra_(std::move(algebra)), md_(std::move(md)) {
  const Eigen::Index n = md_.dim();
  if (algebra_.dim_hilbert() != n) throw ValidationError("cone: algebra and vector dimensions differ");
  if (algebra_.dim() != n)
    throw PreconditionError("cone: A -> A Omega is not a bijection (vector not cyclic and separating)");
  dq_ = md_.delta_power(cplx(0.25, 0.0));
  dmq_ = md_.delta_power(cplx(-0.25, 0.0));
  ComplexMatrix orbit(n, n);
  for (Eigen::Index i = 0; i < n; ++i) orbit.col(i) = algebra_.basis()[static_cast<std::size_t>(i)] * md_.omega;
  lu_.compute(orbit);
}

ComplexMatrix NaturalCone::reconstruct(const ComplexVector& w) const {
  if (w.size() != dim()) throw ValidationError("cone: vector has the wrong dimension");
  return algebra_.element(lu_.solve(w));
}

ComplexVector NaturalCone::sample_member(std::uint64_t seed, double shift) const {
  std::mt19937_64 rng(seed);
  const ComplexMatrix a = random_positive(algebra_, rng) + shift * ComplexMatrix::Identity(dim(), dim());
  const ComplexVector u = image(a);
  return u / u.norm();
}

ConeMembership cone_membership(const NaturalCone& c, const ComplexVector& v) {
  const double nv = v.norm();
  if (!(nv <= kMaxConeVectorNorm)) throw PreconditionError("cone membership: |v| exceeds 1e6");
  ConeMembership out;
  const ComplexMatrix x = c.reconstruct(c.delta_minus_quarter() * v);
  out.hermitian_residual = max_norm(ComplexMatrix(x - x.adjoint()));
  out.min_eigenvalue = hermitian_eig(herm(x)).values.minCoeff();
  out.member = out.hermitian_residual <= kWitnessHermitianTol * nv && out.min_eigenvalue >= -kWitnessEigenFloor * nv;
  if (out.member) out.witness = herm(x);
  return out;
}

std::optional<Separation> separation_witness(const NaturalCone& c, const ComplexVector& v) {
  if (v.size() != c.dim()) throw ValidationError("cone: vector has the wrong dimension");
  const double tol = kWitnessEigenFloor * v.norm();
  const ComplexVector& omega = c.modular().omega;
  const cplx po = omega.dot(v);
  if (po.real() < -tol) return Separation{omega, po};

  // <Delta^{1/4} A Omega, v> = tr(A N) for Hermitian A in the algebra
  const ComplexVector xi = c.delta_quarter() * v;
  const ComplexMatrix n = c.algebra().project(xi * omega.adjoint());
  const ComplexMatrix h = herm(n);
  const ComplexMatrix k = (n - n.adjoint()) / cplx(0.0, 2.0);
  const HermitianEig he = hermitian_eig(h);
  ComplexMatrix a;
  if (he.values.minCoeff() < -tol) {
    a = spectral_projection(he, [&](double x) { return x < -tol; });
  } else {
    const HermitianEig ke = hermitian_eig(herm(k));
    if (ke.values.maxCoeff() > tol)
      a = spectral_projection(ke, [&](double x) { return x > tol; });
    else if (ke.values.minCoeff() < -tol)
      a = spectral_projection(ke, [&](double x) { return x < -tol; });
    else
      return std::nullopt;
  }
  ComplexVector u = c.image(a);
  u /= u.norm();
  return Separation{u, u.dot(v)};
}

bool in_dual_cone(const NaturalCone& c, const ComplexVector& v) { return !separation_witness(c, v).has_value(); }

CheckResult cone_selfdual_check(const NaturalCone& c, int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("cone check: samples must be at least 1");
  CheckResult r;
  r.name = "natural cone is self-dual and pointed";
  r.anchor = "pointed self-dual convex cone";
  std::mt19937_64 rng(seed);
  const double tol = 1e-8;
  const auto n = static_cast<std::size_t>(samples);

  std::vector<ComplexVector> members;
  int not_member = 0, not_pointed = 0, disagree = 0, unseparated = 0;
  for (std::size_t i = 0; i < n; ++i) {
    members.push_back(c.sample_member(rng()));
    if (!cone_membership(c, members.back()).member) ++not_member;
    if (cone_membership(c, ComplexVector(-members.back())).member) ++not_pointed;
  }
  double min_pair = std::numeric_limits<double>::infinity(), max_imag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx p = members[i].dot(members[j]);
      min_pair = std::min(min_pair, p.real());
      max_imag = std::max(max_imag, std::abs(p.imag()));
    }

  int outside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexVector v = gaussian_vector(rng, c.dim());
    v /= v.norm();
    const bool member = cone_membership(c, v).member;
    const auto sep = separation_witness(c, v);
    if (member == sep.has_value()) ++disagree;
    if (member) continue;
    ++outside;
    if (!sep || !cone_membership(c, sep->u).member || (sep->pairing.real() >= -tol && std::abs(sep->pairing.imag()) <= tol))
      ++unseparated;
  }
  for (const auto& m : members)
    if (!in_dual_cone(c, m)) ++disagree;

  const ComplexVector zero = ComplexVector::Zero(c.dim());
  const bool apex = cone_membership(c, zero).member;

  r.residual = std::max(0.0, -min_pair);
  r.witnesses.push_back(std::to_string(n) + "x" + std::to_string(n) + " member pairings, min Re " + sci(min_pair) +
                        ", max |Im| " + sci(max_imag));
  r.witnesses.push_back(std::to_string(outside) + " sampled non-members, " + std::to_string(unseparated) +
                        " without a separating member");
  if (not_member) r.witnesses.push_back(std::to_string(not_member) + " sampled members rejected");
  if (not_pointed) r.witnesses.push_back(std::to_string(not_pointed) + " members whose negative is a member");
  if (disagree) r.witnesses.push_back(std::to_string(disagree) + " disagreements between membership and the dual test");
  if (!apex) r.witnesses.push_back("zero vector rejected");
  const bool ok = min_pair >= -tol && max_imag <= tol && !not_member && !not_pointed && !disagree && !unseparated && apex;
  r.status = ok ? Status::pass : Status::fail;
  return r;
}

cplx positivity_form(const NaturalCone& c, const ComplexVector& v, const ComplexMatrix& a) {
  const ComplexVector& omega = c.modular().omega;
  return v.dot(a * c.modular().j.apply(a * omega));
}

double positivity_form_violation(const NaturalCone& c, const ComplexVector& v, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = -positivity_form(c, v, ComplexMatrix::Identity(c.dim(), c.dim())).real();
  for (int s = 0; s < samples; ++s)
    worst = std::max(worst, -positivity_form(c, v, random_element(c.algebra(), rng)).real());
  return worst;
}

double positivity_form_check(const NaturalCone& c, const ComplexVector& v, int samples, std::uint64_t seed) {
  if (!cone_membership(c, v).member) throw PreconditionError("positivity form: vector is not in the cone");
  return positivity_form_violation(c, v, samples, seed);
}

ConeFamily net_cones(const ToyNet& net, const NetModular& mod) {
  ConeFamily f;
  for (std::size_t w = 0; w < net.algebras.size(); ++w) {
    if (!mod.data[w]) throw PreconditionError("no modular data for " + net.system.labels[w] + ": " + mod.errors[w]);
    f.emplace_back(net.algebras[w], *mod.data[w]);
  }
  return f;
}

IntersectionMembership intersection_membership(const ConeFamily& f, const ComplexVector& v) {
  IntersectionMembership out;
  out.member = true;
  for (const auto& c : f) {
    out.per_cone.push_back(cone_membership(c, v).member);
    out.member = out.member && out.per_cone.back();
  }
  return out;
}

CheckResult p0_structure_check(const ToyNet& net, const NetModular& mod, int samples, std::uint64_t seed) {
  CheckResult r;
  r.name = "intersection cone on the center orbit";
  r.anchor = "P0 = closure(Z+ omega0)";
  const ConeFamily cones = net_cones(net, mod);
  const auto projections = minimal_central_projections(center(global_algebra(net)));
  std::vector<ComplexVector> parts;
  for (const auto& e : projections) {
    parts.push_back(e * net.omega0);
    if (parts.back().norm() < 1e-12) throw PreconditionError("omega0 vanishes on a central block");
  }
  const std::size_t m = parts.size();
  const double tol = 1e-8;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXcd> coeffs;
  for (std::size_t z = 0; z < m; ++z) coeffs.push_back(Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(z)));
  coeffs.push_back(Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(m), cplx(0.0, 1.0)));
  coeffs.push_back(-Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(m), 0));
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(m));
    for (std::size_t z = 0; z < m; ++z) {
      double x = g(rng);
      if (s % 3 == 0) x = std::abs(x);
      c(static_cast<Eigen::Index>(z)) = s % 3 == 2 ? cplx(x, g(rng)) : cplx(x, 0.0);
    }
    coeffs.push_back(c);
  }

  int disagree = 0, members = 0;
  double jfix = 0.0;
  for (const auto& c : coeffs) {
    ComplexVector v = ComplexVector::Zero(net.hilbert_dim);
    for (std::size_t z = 0; z < m; ++z) v += c(static_cast<Eigen::Index>(z)) * parts[z];
    const double scale = c.cwiseAbs().maxCoeff();
    v /= v.norm();
    bool expected = true;
    for (Eigen::Index z = 0; z < c.size(); ++z)
      expected = expected && std::abs(c(z).imag()) <= tol * scale && c(z).real() >= -tol * scale;
    const bool member = intersection_membership(cones, v).member;
    if (member != expected) ++disagree;
    if (!member) continue;
    ++members;
    for (const auto& cone : cones) jfix = std::max(jfix, max_norm(ComplexVector(cone.modular().j.apply(v) - v)));
  }

  // members of the first cone that lie in every cone but off the center orbit
  OrthonormalSet orbit(net.hilbert_dim);
  for (const auto& p : parts) orbit.add(p);
  int beyond = 0;
  const int probes = std::min(samples, 50);
  for (int s = 0; s < probes; ++s) {
    const ComplexVector u = cones[0].sample_member(rng());
    if (intersection_membership(cones, u).member && orbit.residual(u) > 1e-6) ++beyond;
  }

  r.residual = jfix;
  r.witnesses.push_back(std::to_string(m) + " central blocks, " + std::to_string(coeffs.size()) + " vectors in span{Z omega0}, " +
                        std::to_string(members) + " members");
  if (disagree)
    r.witnesses.push_back(std::to_string(disagree) + " disagreements with the nonnegative-coefficient oracle");
  r.witnesses.push_back("max |J_W v - v| over members " + sci(jfix));
  r.witnesses.push_back("info: " + std::to_string(beyond) + " of " + std::to_string(probes) +
                        " sampled members of P(" + net.system.labels[0] +
                        ") lie in every cone off span{Z omega0}");
  r.status = disagree == 0 && jfix <= tol ? Status::pass : Status::fail;
  return r;
}

double same_conjugation_check(const NaturalCone& c, const ComplexVector& v) {
  if (!cone_membership(c, v).member) throw PreconditionError("same conjugation: vector is not in the cone");
  const double nv = v.norm();
  if (nv == 0.0) throw PreconditionError("same conjugation: vector is neither cyclic nor separating");
  const ComplexVector u = v / nv;
  if (!is_cyclic(c.algebra(), u) && !is_separating(c.algebra(), u))
    throw PreconditionError("same conjugation: vector is neither cyclic nor separating");
  const ModularData md = modular_data(c.algebra(), u);
  return max_norm(ComplexMatrix(md.j.kernel() - c.modular().j.kernel()));
}

double RigidityResult::max() const {
  double m = 0.0;
  for (const auto* v : {&delta, &j_commutes, &delta_commutes})
    for (double x : *v) m = std::max(m, x);
  return m;
}

RigidityResult delta_rigidity(const ToyNet& net, const NetModular& mod, const ComplexMatrix& z) {
  const Eigen::Index n = net.hilbert_dim;
  if (z.rows() != n || z.cols() != n) throw ValidationError("rigidity: Z has the wrong shape");
  const double nz = std::max(max_norm(z), 1e-300);
  if (max_norm(ComplexMatrix(z - z.adjoint())) > 1e-10 * nz) throw PreconditionError("Z is not Hermitian");
  const OperatorAlgebra zc = center(global_algebra(net));
  if (zc.membership_residual(z) > 1e-9 * nz) throw PreconditionError("Z is not central");
  const HermitianEig e = hermitian_eig(herm(z));
  if (e.values.minCoeff() <= 1e-12 * e.values.cwiseAbs().maxCoeff()) throw PreconditionError("Z is singular or not positive");
  for (std::size_t w = 0; w < mod.data.size(); ++w)
    if (!mod.data[w]) throw PreconditionError("no modular data for " + net.system.labels[w]);

  ComplexVector omega = z * net.omega0;
  omega /= omega.norm();
  RigidityResult out;
  for (std::size_t w = 0; w < net.algebras.size(); ++w) {
    const ModularData& md = *mod.data[w];
    const ModularData mz = modular_data(net.algebras[w], omega);
    out.delta.push_back(max_norm(ComplexMatrix(mz.delta - md.delta)));
    const ComplexMatrix& k = md.j.kernel();
    out.j_commutes.push_back(max_norm(ComplexMatrix(k * z.conjugate() - z * k)));
    const ComplexMatrix half = md.delta_power(cplx(0.5, 0.0));
    out.delta_commutes.push_back(max_norm(ComplexMatrix(z * half - half * z)));
  }
  return out;
}

CheckResult delta_rigidity_check(const ToyNet& net, const NetModular& mod, const ComplexMatrix& z, double tol) {
  const RigidityResult rr = delta_rigidity(net, mod, z);
  CheckResult r;
  r.name = "modular operator unchanged by central reweighting";
  r.anchor = "Delta_W for Z omega0 equals Delta_W";
  for (std::size_t w = 0; w < rr.delta.size(); ++w)
    r.witnesses.push_back(net.system.labels[w] + ": |dDelta| " + sci(rr.delta[w]) + ", |J Z - Z J| " +
                          sci(rr.j_commutes[w]) + ", |[Z, Delta^1/2]| " + sci(rr.delta_commutes[w]));
  r.residual = rr.max();
  r.status = r.residual <= tol ? Status::pass : Status::fail;
  return r;
}

ComplexMatrix random_central_positive(const ToyNet& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  ComplexMatrix z = ComplexMatrix::Zero(net.hilbert_dim, net.hilbert_dim);
  for (const auto& e : minimal_central_projections(center(global_algebra(net)))) z += u(rng) * e;
  return herm(z);
}

} // namespace gma
