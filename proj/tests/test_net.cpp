#include <cmath>

#include "doctest.h"
#include "gma/errors.hpp"
#include "gma/net.hpp"
#include "test_util.hpp"

using namespace gma;
using namespace gma::testing;

namespace {

bool mentions(const CheckResult& r, const std::string& text) {
  for (const auto& w : r.witnesses)
    if (w.find(text) != std::string::npos) return true;
  return false;
}

ToyNet conjugated(const ToyNet& net, const ComplexMatrix& u) {
  ToyNet out = net;
  for (auto& a : out.algebras) a = conjugate_algebra(a, u);
  out.omega0 = u * net.omega0;
  for (auto& v : out.symmetries) v = u * v * u.adjoint();
  return out;
}

} // namespace

TEST_CASE("wedge system validation") {
  FiniteWedgeSystem s;
  s.labels = {"W", "W'"};
  s.complement = {1, 0};
  s.reflections = {{1, 0}, {1, 0}};
  CHECK_NOTHROW(s.validate());

  auto bad = s;
  bad.complement = {0, 0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = s;
  bad.reflections = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = s;
  bad.order = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  FiniteWedgeSystem four;
  four.labels = {"W", "V", "W'", "V'"};
  four.complement = {2, 3, 0, 1};
  four.reflections.assign(4, four.complement);
  four.order = {{0, 1}}; // W <= V without V' <= W'
  CHECK_THROWS_AS(four.validate(), ValidationError);
  four.order.push_back({3, 2});
  CHECK_NOTHROW(four.validate());
  CHECK(s.index_of("W'") == 1);
  CHECK_THROWS_AS(s.index_of("X"), ValidationError);
}

TEST_CASE("doubled demo satisfies conditions (a)-(c) and duality") {
  const ToyNet net = build_demo("doubled", {{"weights", "0.8,0.2"}});
  CHECK(net.hilbert_dim == 4);
  CHECK(check_condition_a(net).status == Status::pass);
  CHECK(check_condition_b(net).status == Status::pass);
  const NetModular mod = compute_net_modular(net);
  REQUIRE(mod.complete());
  const CheckResult c = check_condition_c(net, mod);
  CHECK(c.status == Status::pass);
  CHECK(c.residual <= 1e-8);
  CHECK(wedge_duality_check(net).status == Status::pass);
  CHECK(global_algebra_check(net).status == Status::pass);
  CHECK(geometry_consistency_check(net).status == Status::pass);
  CHECK(degenerate_abelian_detector(net).status == Status::pass);

  // J swaps the tensor factors: J (e_i (x) e_j) = e_j (x) e_i
  const ComplexMatrix j = mod.data[0]->j.kernel();
  CHECK(max_norm(ComplexMatrix(j - swap_matrix(2))) <= 1e-9);
}

TEST_CASE("condition (a) flags constant and order-reversed assignments") {
  ToyNet net = build_demo("doubled");
  net.algebras[1] = net.algebras[0];
  const CheckResult r = check_condition_a(net);
  CHECK(r.status == Status::fail);
  CHECK(mentions(r, "injectivity"));

  // W <= V declared, but R(V) is strictly smaller than R(W)
  ToyNet chain;
  chain.name = "chain";
  chain.system.labels = {"W", "V", "V'", "W'"};
  chain.system.order = {{0, 1}, {2, 3}};
  chain.system.complement = {3, 2, 1, 0};
  chain.system.reflections = {{3, 2, 1, 0}, {3, 2, 1, 0}, {3, 2, 1, 0}, {3, 2, 1, 0}};
  chain.hilbert_dim = 4;
  chain.omega0 = schmidt_vector({0.5, 0.5});
  const OperatorAlgebra big = close_star_algebra({kron(unit(2, 0, 1), eye(2))}, 4);
  const OperatorAlgebra small = close_star_algebra({kron(pauli_z(), eye(2))}, 4);
  chain.algebras = {big, small, commutant(small), commutant(big)};
  chain.validate();
  const CheckResult o = check_condition_a(chain);
  CHECK(o.status == Status::fail);
  CHECK(mentions(o, "order"));
}

TEST_CASE("condition (b) on product vectors and scalars") {
  ToyNet net = build_demo("doubled");
  net.omega0 = ComplexVector::Zero(4);
  net.omega0(0) = 1.0;
  const CheckResult r = check_condition_b(net);
  CHECK(r.status == Status::fail);
  CHECK(mentions(r, "not separating"));

  ToyNet sc = build_demo("doubled");
  sc.algebras[0] = scalars(4);
  CHECK(mentions(check_condition_b(sc), "W: omega0 is not cyclic"));
}

TEST_CASE("condition (c) with a mismatched assignment names the pair") {
  ToyNet net = build_demo("doubled");
  net.algebras[1] = net.algebras[0];
  const NetModular mod = compute_net_modular(net);
  const CheckResult r = check_condition_c(net, mod);
  CHECK(r.status != Status::pass);
}

TEST_CASE("two independent doubled pairs pass condition (c) with 16 pair checks") {
  const ToyNet net = build_demo("two_pairs");
  CHECK(net.hilbert_dim == 16);
  CHECK(check_condition_a(net).status == Status::pass);
  CHECK(check_condition_b(net).status == Status::pass);
  const NetModular mod = compute_net_modular(net);
  const CheckResult c = check_condition_c(net, mod);
  CHECK(c.status == Status::pass);
  CHECK(mentions(c, "16 pair checks"));
  CHECK(wedge_duality_check(net).status == Status::pass);
}

TEST_CASE("condition (d) on tracial, doubled and single-wedge models") {
  const ToyNet tr = build_demo("tracial");
  const NetModular mt = compute_net_modular(tr);
  const CheckResult dt = check_condition_d(tr, mt);
  CHECK(dt.status == Status::info);
  CHECK(dt.verdict == "pass");

  const ToyNet db = build_demo("doubled", {{"weights", "0.8,0.2"}});
  const NetModular md = compute_net_modular(db);
  const CheckResult dd = check_condition_d(db, md);
  CHECK(dd.status == Status::info);
  CHECK(dd.verdict == "fail");
  CHECK(dd.residual > 0.1);

  // one label, complement itself: abelian diagonal algebra on C^2 is its own
  // commutant, group {1, J}
  ToyNet single;
  single.name = "single";
  single.system.labels = {"W"};
  single.system.complement = {0};
  single.system.reflections = {{0}};
  single.hilbert_dim = 2;
  single.omega0 = ComplexVector(2);
  single.omega0 << std::sqrt(0.9), std::sqrt(0.1);
  single.algebras = {OperatorAlgebra(2, {unit(2, 0, 0), unit(2, 1, 1)})};
  single.validate();
  const NetModular ms = compute_net_modular(single);
  CHECK(conjugation_group(ms).size() == 2);
  const CheckResult ds = check_condition_d(single, ms);
  CHECK(ds.verdict == "pass"); // abelian: Delta = 1
}

TEST_CASE("conjugation group composition and cap") {
  const ToyNet net = build_demo("doubled", {{"weights", "0.8,0.2"}});
  const NetModular mod = compute_net_modular(net);
  const auto group = conjugation_group(mod);
  CHECK(group.size() == 2); // J_W = J_W' for the doubled model
  CHECK_THROWS_AS(conjugation_group(mod, 1), EnumerationCapError);
}

TEST_CASE("symmetry commutation: accepted, excluded and block swap") {
  const ToyNet net = build_demo("doubled", {{"weights", "0.8,0.2"}, {"extra_symmetry", "left"}});
  const NetModular mod = compute_net_modular(net);
  const CheckResult r = symmetry_commutation_check(net, mod);
  CHECK(r.status == Status::pass);
  CHECK(r.residual <= 1e-8);
  CHECK(mentions(r, "1 of 2 symmetries"));
  CHECK(mentions(r, "does not fix Ω₀"));

  const ToyNet br = build_demo("broken_symmetry");
  const NetModular mb = compute_net_modular(br);
  const CheckResult b = symmetry_commutation_check(br, mb);
  CHECK(b.status == Status::pass);
  CHECK(mentions(b, "2 of 2 symmetries"));
}

TEST_CASE("symmetry that moves an algebra is excluded") {
  ToyNet net = build_demo("doubled", {{"weights", "0.5,0.5"}});
  net.symmetries = {swap_matrix(2)}; // fixes omega, exchanges the factors
  const NetModular mod = compute_net_modular(net);
  const CheckResult r = symmetry_commutation_check(net, mod);
  CHECK(mentions(r, "does not preserve R(W)"));
}

TEST_CASE("invariant subspace check") {
  const ToyNet net = build_demo("translation_equipped", {{"weights", "0.6,0.4"}});
  const CheckResult r = invariant_subspace_check(net);
  CHECK(r.status == Status::pass);
  CHECK(mentions(r, "dim E0 H = 2"));

  const ToyNet bad = build_demo("translation_equipped", {{"weights", "0.6,0.4"}, {"defect", "1"}});
  const CheckResult d = invariant_subspace_check(bad);
  CHECK(d.status == Status::fail);
  CHECK(mentions(d, "dimension mismatch"));

  ToyNet zero = build_demo("multi_block");
  zero.translation_generators.assign(4, ComplexMatrix::Zero(zero.hilbert_dim, zero.hilbert_dim));
  CHECK(invariant_subspace_check(zero).status == Status::fail);

  ToyNet nc = build_demo("doubled");
  nc.translation_generators = {kron(pauli_x(), eye(2)), kron(pauli_z(), eye(2)), ComplexMatrix::Zero(4, 4),
                               ComplexMatrix::Zero(4, 4)};
  CHECK_THROWS_AS(invariant_subspace_check(nc), ValidationError);

  CHECK(invariant_subspace_check(build_demo("doubled")).status == Status::info);
}

TEST_CASE("degenerate abelian detector") {
  CHECK(classify_degenerate_abelian(build_demo("degenerate_abelian")) == AbelianClassification::degenerate_abelian);
  CHECK(classify_degenerate_abelian(build_demo("degenerate_abelian", {{"nonabelian", "1"}})) ==
        AbelianClassification::inconsistent);
  CHECK(classify_degenerate_abelian(build_demo("doubled")) == AbelianClassification::idle);
  CHECK(degenerate_abelian_detector(build_demo("degenerate_abelian")).status == Status::info);
  CHECK(degenerate_abelian_detector(build_demo("degenerate_abelian", {{"nonabelian", "1"}})).status == Status::fail);
}

TEST_CASE("multi-block demo") {
  const ToyNet net = build_demo("multi_block", {{"weights", "0.5,0.3,0.2"}, {"k", "2"}});
  CHECK(net.hilbert_dim == 12);
  const NetModular mod = compute_net_modular(net);
  CHECK(check_condition_a(net).status == Status::pass);
  CHECK(check_condition_b(net).status == Status::pass);
  CHECK(check_condition_c(net, mod).status == Status::pass);
  CHECK(wedge_duality_check(net).status == Status::pass);
  CHECK(global_algebra_check(net).status == Status::pass);
  CHECK(center(global_algebra(net)).dim() == 3);
}

TEST_CASE("conditions (a)-(c) are invariant under unitary conjugation of the net") {
  std::mt19937_64 rng(11);
  for (const char* demo : {"doubled", "multi_block", "two_pairs"}) {
    const ToyNet net = build_demo(demo);
    const ToyNet moved = conjugated(net, random_unitary(rng, net.hilbert_dim));
    const NetModular mod = compute_net_modular(moved);
    CHECK(check_condition_a(moved).status == Status::pass);
    CHECK(check_condition_b(moved).status == Status::pass);
    CHECK(check_condition_c(moved, mod).status == Status::pass);
  }
}

TEST_CASE("demo parameter validation") {
  CHECK_THROWS_AS(build_demo("nope"), ValidationError);
  CHECK_THROWS_AS(build_demo("doubled", {{"weights", "0.8,-1"}}), ValidationError);
  CHECK_THROWS_AS(build_demo("doubled", {{"colour", "red"}}), ValidationError);
  CHECK_THROWS_AS(build_demo("doubled", {{"k", "x"}}), ValidationError);
  CHECK_THROWS_AS(build_demo("multi_block", {{"schmidt", "0.5,0.5;0.5,0.5"}}), ValidationError);
  for (const auto& name : demo_names()) CHECK_NOTHROW(build_demo(name));
}

TEST_CASE("demos are deterministic") {
  const ToyNet a = build_demo("doubled", {{"seed", "5"}});
  const ToyNet b = build_demo("doubled", {{"seed", "5"}});
  CHECK(max_norm(ComplexMatrix(a.symmetries[0] - b.symmetries[0])) == 0.0);
}
