#include "gma/net.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gma/errors.hpp"

namespace gma {

namespace {

std::vector<std::vector<bool>> order_closure(const FiniteWedgeSystem& s) {
  const int n = s.size();
  std::vector<std::vector<bool>> le(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [a, b] : s.order)
    if (a >= 0 && a < n && b >= 0 && b < n) le[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  return le;
}

bool valid_index(int i, int n) { return i >= 0 && i < n; }

std::string label_of(const ToyNet& net, int i) { return net.system.labels[static_cast<std::size_t>(i)]; }

constexpr const char* kAnchorA = "order-preserving bijection W -> R(W)";
constexpr const char* kAnchorB = "omega0 cyclic and separating for every wedge algebra";
constexpr const char* kAnchorC = "modular conjugations act as edge reflections on the net";
constexpr const char* kAnchorD = "modular unitaries inside the group generated by the conjugations";

} // namespace

int FiniteWedgeSystem::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[static_cast<std::size_t>(i)] == label) return i;
  throw ValidationError("unknown wedge label '" + label + "'");
}

bool FiniteWedgeSystem::leq(int a, int b) const { return order_closure(*this)[a][b]; }

void FiniteWedgeSystem::validate() const {
  const int n = size();
  if (n == 0) throw ValidationError("wedge system has no labels");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != n) throw ValidationError("wedge labels must be distinct");
  for (const auto& [a, b] : order)
    if (!valid_index(a, n) || !valid_index(b, n)) throw ValidationError("order pair refers to an unknown label");
  const auto le = order_closure(*this);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && le[a][b] && le[b][a])
        throw ValidationError("order is not antisymmetric: " + labels[a] + " and " + labels[b]);

  if (static_cast<int>(complement.size()) != n) throw ValidationError("complement must list one label per label");
  for (int a = 0; a < n; ++a) {
    if (!valid_index(complement[a], n)) throw ValidationError("complement refers to an unknown label");
    if (complement[complement[a]] != a) throw ValidationError("complement is not an involution at " + labels[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le[a][b] && !le[complement[b]][complement[a]])
        throw ValidationError("complement does not reverse the order on " + labels[a] + " <= " + labels[b]);

  if (static_cast<int>(reflections.size()) != n) throw ValidationError("reflections must list one permutation per label");
  for (int w0 = 0; w0 < n; ++w0) {
    const auto& p = reflections[w0];
    if (static_cast<int>(p.size()) != n) throw ValidationError("reflection of " + labels[w0] + " has the wrong length");
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (int w = 0; w < n; ++w) {
      if (!valid_index(p[w], n) || hit[p[w]]) throw ValidationError("reflection of " + labels[w0] + " is not a permutation");
      hit[p[w]] = true;
    }
    for (int w = 0; w < n; ++w)
      if (p[p[w]] != w) throw ValidationError("reflection of " + labels[w0] + " is not involutive");
    if (p[w0] != complement[w0])
      throw ValidationError("reflection of " + labels[w0] + " does not map it to its complement");
  }
}

void ToyNet::validate() const {
  system.validate();
  const Eigen::Index n = hilbert_dim;
  if (n <= 0) throw ValidationError("hilbert_dim must be positive");
  if (static_cast<int>(algebras.size()) != system.size())
    throw ValidationError("one algebra per wedge label is required");
  for (std::size_t i = 0; i < algebras.size(); ++i)
    if (algebras[i].dim_hilbert() != n) throw ValidationError("algebra of " + system.labels[i] + " has the wrong dimension");
  if (omega0.size() != n) throw ValidationError("omega0 has the wrong dimension");
  if (std::abs(omega0.norm() - 1.0) > 1e-10)
    throw ValidationError("omega0 must be a unit vector (norm " + std::to_string(omega0.norm()) + ")");
  for (std::size_t i = 0; i < symmetries.size(); ++i) {
    const auto& v = symmetries[i];
    if (v.rows() != n || v.cols() != n) throw ValidationError("symmetry " + std::to_string(i) + " has the wrong shape");
    if (!is_unitary(v, 1e-9)) throw ValidationError("symmetry " + std::to_string(i) + " is not unitary");
  }
  if (!translation_generators.empty()) {
    if (translation_generators.size() != 4) throw ValidationError("translation generators must be four matrices");
    for (const auto& p : translation_generators) {
      if (p.rows() != n || p.cols() != n) throw ValidationError("translation generator has the wrong shape");
      if (!is_hermitian(p, 1e-10)) throw ValidationError("translation generator is not Hermitian");
    }
  }
  if (!geometry.empty() && static_cast<int>(geometry.size()) != system.size())
    throw ValidationError("wedge geometry must give one literal per label");
}

bool NetModular::complete() const {
  return std::all_of(data.begin(), data.end(), [](const auto& d) { return d.has_value(); });
}

NetModular compute_net_modular(const ToyNet& net) {
  NetModular out;
  for (std::size_t i = 0; i < net.algebras.size(); ++i) {
    try {
      out.data.emplace_back(modular_data(net.algebras[i], net.omega0));
      out.errors.emplace_back();
      out.error_kinds.emplace_back();
    } catch (const Error& e) {
      out.data.emplace_back(std::nullopt);
      out.errors.push_back(net.system.labels[i] + ": " + e.what());
      out.error_kinds.push_back(error_kind_of(e));
    }
  }
  return out;
}

namespace {

/// Error result when some wedge lacks modular data.
std::optional<CheckResult> missing_modular(const std::string& name, const NetModular& mod, const char* anchor) {
  if (mod.complete()) return std::nullopt;
  CheckResult r;
  r.name = name;
  r.status = Status::error;
  r.residual = std::nan("");
  r.anchor = anchor;
  r.error_kind = "precondition";
  for (std::size_t i = 0; i < mod.errors.size(); ++i)
    if (!mod.data[i]) {
      r.witnesses.push_back(mod.errors[i]);
      if (mod.error_kinds[i] == "ill-conditioned") r.error_kind = "ill-conditioned";
    }
  return r;
}

} // namespace

CheckResult check_condition_a(const ToyNet& net, double tol) {
  CheckResult r;
  r.name = "condition (a): order-preserving bijection";
  r.anchor = kAnchorA;
  const int n = net.system.size();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (algebra_equal(net.algebras[a], net.algebras[b], tol))
        r.witnesses.push_back("injectivity: R(" + label_of(net, a) + ") = R(" + label_of(net, b) + ")");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const double res = containment_residual(net.algebras[b], net.algebras[a]);
      const bool contained = res <= tol;
      const bool ordered = net.system.leq(a, b);
      if (ordered) worst = std::max(worst, res);
      if (ordered && !contained)
        r.witnesses.push_back("order: " + label_of(net, a) + " <= " + label_of(net, b) + " but R(" + label_of(net, a) +
                              ") is not inside R(" + label_of(net, b) + ")");
      if (!ordered && contained)
        r.witnesses.push_back("order: R(" + label_of(net, a) + ") is inside R(" + label_of(net, b) + ") but " +
                              label_of(net, a) + " <= " + label_of(net, b) + " fails");
    }
  r.residual = worst;
  r.status = r.witnesses.empty() ? Status::pass : Status::fail;
  return r;
}

CheckResult check_condition_b(const ToyNet& net) {
  CheckResult r;
  r.name = "condition (b): cyclic and separating";
  r.anchor = kAnchorB;
  r.residual = std::nan("");
  for (int a = 0; a < net.system.size(); ++a) {
    const auto& alg = net.algebras[a];
    if (!is_cyclic(alg, net.omega0)) r.witnesses.push_back(label_of(net, a) + ": omega0 is not cyclic");
    if (!is_separating(alg, net.omega0)) r.witnesses.push_back(label_of(net, a) + ": omega0 is not separating");
  }
  r.status = r.witnesses.empty() ? Status::pass : Status::fail;
  return r;
}

CheckResult check_condition_c(const ToyNet& net, const NetModular& mod, double tol) {
  const std::string name = "condition (c): geometric modular action";
  if (auto e = missing_modular(name, mod, kAnchorC)) return *e;
  CheckResult r;
  r.name = name;
  r.anchor = kAnchorC;
  const int n = net.system.size();
  double worst = 0.0;
  for (int w0 = 0; w0 < n; ++w0)
    for (int w = 0; w < n; ++w) {
      const OperatorAlgebra moved = conjugate_algebra(net.algebras[w], mod.data[w0]->j);
      const int target = net.system.reflections[w0][w];
      const auto& expected = net.algebras[target];
      double res = std::max(containment_residual(expected, moved), containment_residual(moved, expected));
      if (moved.dim() != expected.dim()) res = std::max(res, 1.0);
      worst = std::max(worst, res);
      if (res > tol)
        r.witnesses.push_back("J_" + label_of(net, w0) + " R(" + label_of(net, w) + ") J_" + label_of(net, w0) +
                              " != R(" + label_of(net, target) + ")");
    }
  r.residual = worst;
  r.witnesses.insert(r.witnesses.begin(), std::to_string(n * n) + " pair checks");
  r.status = worst <= tol ? Status::pass : Status::fail;
  return r;
}

CheckResult wedge_duality_check(const ToyNet& net, double tol) {
  CheckResult r;
  r.name = "wedge duality R(W)' = R(W')";
  r.anchor = "wedge duality";
  double worst = 0.0;
  for (int w = 0; w < net.system.size(); ++w) {
    const OperatorAlgebra c = commutant(net.algebras[w]);
    const auto& other = net.algebras[net.system.complement[w]];
    double res = std::max(containment_residual(c, other), containment_residual(other, c));
    if (c.dim() != other.dim()) res = std::max(res, 1.0);
    worst = std::max(worst, res);
    if (res > tol) r.witnesses.push_back("R(" + label_of(net, w) + ")' != R(" + label_of(net, net.system.complement[w]) + ")");
  }
  r.residual = worst;
  r.status = worst <= tol ? Status::pass : Status::fail;
  return r;
}

std::vector<ConjugationGroupElement> conjugation_group(const NetModular& mod, std::size_t cap) {
  std::vector<ConjugationGroupElement> gens;
  auto find = [](const std::vector<ConjugationGroupElement>& set, const ConjugationGroupElement& g) {
    for (const auto& e : set)
      if (e.anti == g.anti && max_norm(ComplexMatrix(e.kernel - g.kernel)) <= 1e-8) return true;
    return false;
  };
  Eigen::Index n = 0;
  for (const auto& d : mod.data) {
    if (!d) throw PreconditionError("conjugation group needs the modular data of every wedge");
    n = d->dim();
    ConjugationGroupElement g{d->j.kernel(), true};
    if (!find(gens, g)) gens.push_back(std::move(g));
  }
  std::vector<ConjugationGroupElement> group{{ComplexMatrix::Identity(n, n), false}};
  for (std::size_t head = 0; head < group.size(); ++head)
    for (const auto& g : gens) {
      const ConjugationGroupElement& e = group[head];
      ConjugationGroupElement p{g.kernel * (g.anti ? ComplexMatrix(e.kernel.conjugate()) : e.kernel), g.anti != e.anti};
      if (find(group, p)) continue;
      group.push_back(std::move(p));
      if (group.size() > cap)
        throw EnumerationCapError("group generated by the modular conjugations exceeds " + std::to_string(cap) +
                                  " elements");
    }
  return group;
}

CheckResult check_condition_d(const ToyNet& net, const NetModular& mod, double tol) {
  const std::string name = "condition (d): modular stability";
  if (auto e = missing_modular(name, mod, kAnchorD)) return *e;
  CheckResult r;
  r.name = name;
  r.anchor = kAnchorD;
  r.status = Status::info;
  std::vector<ConjugationGroupElement> group;
  try {
    group = conjugation_group(mod);
  } catch (const EnumerationCapError& e) {
    return error_result(name, e, kAnchorD);
  }
  r.witnesses.push_back("generated group has " + std::to_string(group.size()) + " elements");
  double worst = 0.0;
  for (int w = 0; w < net.system.size(); ++w)
    for (double t : {0.5, 1.0}) {
      const ComplexMatrix u = mod.data[w]->delta_power(cplx(0.0, t));
      double best = std::numeric_limits<double>::infinity();
      for (const auto& g : group)
        if (!g.anti) best = std::min(best, max_norm(ComplexMatrix(u - g.kernel)));
      worst = std::max(worst, best);
      if (best > tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "Delta^{it}, t = %.1f, of %s: distance %.6g", t, label_of(net, w).c_str(), best);
        r.witnesses.emplace_back(buf);
      }
    }
  r.residual = worst;
  r.verdict = worst <= tol ? "pass" : "fail";
  return r;
}

CheckResult symmetry_commutation_check(const ToyNet& net, const NetModular& mod, double tol) {
  const std::string name = "internal symmetries commute with every J_W";
  const char* anchor = "symmetries fixing omega0 commute with the modular conjugations";
  if (auto e = missing_modular(name, mod, anchor)) return *e;
  CheckResult r;
  r.name = name;
  r.anchor = anchor;
  double worst = 0.0;
  int used = 0;
  for (std::size_t g = 0; g < net.symmetries.size(); ++g) {
    const ComplexMatrix& v = net.symmetries[g];
    const std::string tag = "V[" + std::to_string(g) + "]";
    if (max_norm(ComplexVector(v * net.omega0 - net.omega0)) > 1e-10) {
      r.witnesses.push_back(tag + " excluded: does not fix Ω₀");
      continue;
    }
    std::string broken;
    for (int w = 0; w < net.system.size() && broken.empty(); ++w) {
      const OperatorAlgebra moved = conjugate_algebra(net.algebras[w], v);
      if (containment_residual(net.algebras[w], moved) > 1e-9) broken = label_of(net, w);
    }
    if (!broken.empty()) {
      r.witnesses.push_back(tag + " excluded: does not preserve R(" + broken + ")");
      continue;
    }
    ++used;
    double res = 0.0;
    for (const auto& d : mod.data)
      res = std::max(res, max_norm(ComplexMatrix(v * d->j.kernel() - d->j.kernel() * v.conjugate())));
    worst = std::max(worst, res);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s: max |[V, J_W]| = %.3e", tag.c_str(), res);
    r.witnesses.emplace_back(buf);
  }
  r.witnesses.insert(r.witnesses.begin(), std::to_string(used) + " of " + std::to_string(net.symmetries.size()) +
                                              " symmetries satisfy the hypotheses");
  r.residual = worst;
  r.status = worst <= tol ? Status::pass : Status::fail;
  return r;
}

OperatorAlgebra global_algebra(const ToyNet& net) { return join(net.algebras); }

CheckResult global_algebra_check(const ToyNet& net, double tol) {
  CheckResult r;
  r.name = "commutant of the global algebra is its center";
  r.anchor = "commutant of the net algebra lies in the net algebra";
  const OperatorAlgebra g = global_algebra(net);
  const OperatorAlgebra c = commutant(g);
  const OperatorAlgebra z = intersection(g, c);
  double res = std::max(containment_residual(g, c), containment_residual(c, z));
  if (c.dim() != z.dim()) res = std::max(res, 1.0);
  r.residual = res;
  r.witnesses.push_back("dim global algebra = " + std::to_string(g.dim()) + ", dim commutant = " +
                        std::to_string(c.dim()) + ", dim center = " + std::to_string(z.dim()));
  r.status = res <= tol ? Status::pass : Status::fail;
  return r;
}

CheckResult invariant_subspace_check(const ToyNet& net, double tol) {
  CheckResult r;
  r.name = "translation-invariant vectors span the center orbit";
  r.anchor = "E0 H = closure(Z omega0)";
  const auto& ps = net.translation_generators;
  if (ps.empty()) {
    r.status = Status::info;
    r.verdict = "not applicable";
    r.residual = std::nan("");
    r.witnesses.push_back("model has no translation generators");
    return r;
  }
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a + 1; b < ps.size(); ++b)
      if (max_norm(ComplexMatrix(ps[a] * ps[b] - ps[b] * ps[a])) > 1e-10)
        throw ValidationError("translation generators do not commute");
  const Eigen::Index n = net.hilbert_dim;
  ComplexMatrix stack(4 * n, n);
  for (std::size_t a = 0; a < 4; ++a) stack.middleRows(static_cast<Eigen::Index>(a) * n, n) = ps[a];
  const auto kernel = kernel_basis(stack, 1e-9);
  ComplexMatrix e0 = ComplexMatrix::Zero(n, n);
  for (const auto& v : kernel) e0 += v * v.adjoint();

  const OperatorAlgebra z = center(global_algebra(net));
  OrthonormalSet orbit(n);
  for (const auto& c : z.basis()) orbit.add(c * net.omega0, 1e-9, 1e-12);
  const ComplexMatrix q = orbit.as_matrix();
  const ComplexMatrix pz = q * q.adjoint();

  double res = max_norm(ComplexMatrix(e0 - pz));
  r.witnesses.push_back("dim E0 H = " + std::to_string(kernel.size()) + ", dim center orbit = " +
                        std::to_string(orbit.size()));
  if (static_cast<Eigen::Index>(kernel.size()) != orbit.size()) r.witnesses.push_back("dimension mismatch");

  double contain = 0.0;
  for (int w = 0; w < net.system.size(); ++w) {
    const double c = containment_residual(center(net.algebras[w]), z);
    contain = std::max(contain, c);
    if (c > tol) r.witnesses.push_back("center(R) is not inside center(R(" + label_of(net, w) + "))");
  }
  res = std::max(res, contain);
  r.residual = res;
  r.status = res <= tol && static_cast<Eigen::Index>(kernel.size()) == orbit.size() ? Status::pass : Status::fail;
  return r;
}

std::string to_string(AbelianClassification c) {
  switch (c) {
    case AbelianClassification::idle: return "idle";
    case AbelianClassification::degenerate_abelian: return "degenerate-abelian";
    case AbelianClassification::inconsistent: return "inconsistent";
  }
  return "idle";
}

AbelianClassification classify_degenerate_abelian(const ToyNet& net) {
  const int n = net.system.size();
  bool injective = true;
  for (int a = 0; a < n && injective; ++a)
    for (int b = a + 1; b < n && injective; ++b)
      if (algebra_equal(net.algebras[a], net.algebras[b], 1e-8)) injective = false;
  if (injective) return AbelianClassification::idle;
  bool constant = true;
  for (int a = 1; a < n; ++a) constant = constant && algebra_equal(net.algebras[0], net.algebras[a], 1e-8);
  if (constant && net.algebras[0].is_abelian(1e-8)) return AbelianClassification::degenerate_abelian;
  return AbelianClassification::inconsistent;
}

CheckResult degenerate_abelian_detector(const ToyNet& net) {
  CheckResult r;
  r.name = "degenerate abelian nets";
  r.anchor = "non-injective nets are abelian and constant";
  r.residual = std::nan("");
  const AbelianClassification c = classify_degenerate_abelian(net);
  r.verdict = to_string(c);
  switch (c) {
    case AbelianClassification::idle:
      r.status = Status::pass;
      r.witnesses.push_back("assignment is injective; detector idle");
      break;
    case AbelianClassification::degenerate_abelian:
      r.status = Status::info;
      r.witnesses.push_back("all wedge algebras are equal and abelian: degenerate-abelian net, excluded by the standing assumptions");
      break;
    case AbelianClassification::inconsistent:
      r.status = Status::fail;
      r.witnesses.push_back("injectivity fails but the algebras are not one abelian algebra: inconsistent with conditions (a)-(c)");
      break;
  }
  return r;
}

CheckResult geometry_consistency_check(const ToyNet& net) {
  CheckResult r;
  r.name = "wedge geometry matches the wedge system";
  r.anchor = "edge reflections and complements of Minkowski wedges";
  r.residual = std::nan("");
  if (net.geometry.empty()) {
    r.status = Status::info;
    r.verdict = "not applicable";
    r.witnesses.push_back("model carries no wedge geometry");
    return r;
  }
  const int n = net.system.size();
  std::vector<Wedge<double>> w;
  const Wedge<double> wr = standard_wedge<double>();
  for (const auto& lit : net.geometry) w.push_back(transform(parse_poincare(lit).floating, wr));
  for (int a = 0; a < n; ++a) {
    if (!same_wedge(causal_complement(w[a]), w[net.system.complement[a]]))
      r.witnesses.push_back("complement of " + label_of(net, a) + " does not match its geometry");
    const Poincare<double> lam = edge_reflection(w[a]);
    for (int b = 0; b < n; ++b) {
      if (!same_wedge(transform(lam, w[b]), w[net.system.reflections[a][b]]))
        r.witnesses.push_back("reflection through " + label_of(net, a) + " does not map " + label_of(net, b) + " to " +
                              label_of(net, net.system.reflections[a][b]));
      if (a != b && net.system.leq(a, b) && !includes(w[b], w[a]).holds)
        r.witnesses.push_back(label_of(net, a) + " <= " + label_of(net, b) + " but the wedges are not nested");
    }
  }
  r.status = r.witnesses.empty() ? Status::pass : Status::fail;
  return r;
}

} // namespace gma
