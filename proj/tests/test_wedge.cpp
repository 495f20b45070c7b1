#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "gma/errors.hpp"
#include "gma/wedge.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gma;
using namespace gma::testing;

namespace {

using V = Vec4<double>;
using Q = Rational;

Poincare<double> translation(double a0, double a1, double a2, double a3) {
  return Poincare<double>::translation_by({a0, a1, a2, a3});
}

Poincare<double> diag_lorentz(double a, double b, double c, double d) {
  Poincare<double> g;
  g.lorentz = {{{a, 0, 0, 0}, {0, b, 0, 0}, {0, 0, c, 0}, {0, 0, 0, d}}};
  return g;
}

} // namespace

TEST_CASE("standard wedge membership") {
  const auto w = standard_wedge<double>();
  CHECK(w.contains({0, 1, 5, -3}));
  CHECK_FALSE(w.contains({2, 1, 0, 0}));
  CHECK_FALSE(w.contains({0, 0, 0, 0}));
  CHECK(w.plus.covector == V{1, 1, 0, 0});
  CHECK(w.minus.covector == V{-1, 1, 0, 0});
  CHECK(w.edge_point == V{0, 0, 0, 0});
}

TEST_CASE("transforms of the standard wedge") {
  const auto wr = standard_wedge<double>();
  CHECK(same_wedge(transform(Poincare<double>::identity(), wr), wr));

  const auto shifted = transform(translation(0, 1, 0, 0), wr);
  CHECK(shifted.edge_point == V{0, 1, 0, 0});
  const auto cert = includes(wr, shifted);
  CHECK(cert.holds);
  CHECK_FALSE(includes(shifted, wr).holds);
  CHECK_FALSE(same_wedge(shifted, wr));
  std::mt19937_64 rng(1);
  CHECK(sampled_inclusion(rng, wr, translation(0, 1, 0, 0), 20000));

  // rotation by pi about x3 gives the opposite wedge
  const auto rotated = transform(diag_lorentz(1, -1, -1, 1), wr);
  CHECK(same_wedge(rotated, causal_complement(wr)));
  for (int s = 0; s < 2000; ++s) {
    const V x = sample_in(rng, Poincare<double>::identity());
    CHECK(rotated.contains(V{x[0], -x[1], x[2], x[3]}));
    CHECK_FALSE(rotated.contains(x));
  }

  CHECK_THROWS_AS(transform(diag_lorentz(1, -1, 1, 1), wr), ValidationError);
  CHECK_THROWS_AS(transform(diag_lorentz(2, 1, 1, 1), wr), ValidationError);
}

TEST_CASE("Farkas certificate for a shifted wedge") {
  const auto wr = standard_wedge<Q>();
  const auto shifted = transform(Poincare<Q>::translation_by({Q(0), Q(1), Q(0), Q(0)}), wr);
  const auto cert = includes(wr, shifted);
  REQUIRE(cert.holds);
  CHECK(cert.terms[0].alpha == 1);
  CHECK(cert.terms[0].beta == 0);
  CHECK(cert.terms[0].constant == 1);
  CHECK(cert.terms[1].alpha == 0);
  CHECK(cert.terms[1].beta == 1);
  CHECK(cert.terms[1].constant == 1);
  CHECK_FALSE(includes(wr, causal_complement(wr)).holds);
  CHECK(includes(wr, wr).holds);
}

TEST_CASE("causal complement") {
  const auto wr = standard_wedge<double>();
  const auto c = causal_complement(wr);
  CHECK(c.contains({0, -1, 0, 0}));
  CHECK(c.contains({0.5, -1, 7, 0}));
  CHECK_FALSE(c.contains({1, -1, 0, 0}));
  CHECK_FALSE(c.contains({0, 1, 0, 0}));
  CHECK(same_wedge(causal_complement(c), wr));

  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const auto g = random_poincare(rng);
    const auto w = transform(random_poincare(rng), wr);
    CHECK(same_wedge(causal_complement(transform(g, w)), transform(g, causal_complement(w))));
    CHECK(same_wedge(causal_complement(causal_complement(w)), w));
  }
}

TEST_CASE("edge reflections") {
  const auto wr = standard_wedge<double>();
  CHECK(max_diff(edge_reflection(wr), diag_lorentz(-1, -1, 1, 1)) == 0.0);

  const auto shifted = transform(translation(0, 1, 0, 0), wr);
  const Poincare<double> expected =
      translation(0, 1, 0, 0) * diag_lorentz(-1, -1, 1, 1) * translation(0, -1, 0, 0);
  CHECK(max_diff(edge_reflection(shifted), expected) <= 1e-15);
  CHECK(edge_reflection(shifted).translation == V{0, 2, 0, 0});

  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    const auto g = random_poincare(rng);
    const auto w = transform(g, wr);
    const auto l = edge_reflection(w);
    CHECK(max_diff(l * l, Poincare<double>::identity()) <= 1e-10);
    CHECK(det_residual(l.lorentz) <= 1e-12);
    CHECK_FALSE(l.orthochronous());
    CHECK(same_wedge(transform(l, w), causal_complement(w)));
    CHECK(max_diff(l, g * edge_reflection(wr) * inverse(g)) <= 1e-10);
  }
}

TEST_CASE("edge reflections are exact on rational wedges") {
  const auto wr = standard_wedge<Q>();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = rational_element(seed);
    const auto w = transform(g, wr);
    const auto l = edge_reflection(w);
    CHECK(l * l == Poincare<Q>::identity());
    CHECK(determinant(l.lorentz) == 1);
    CHECK(l.lorentz[0][0] < 0);
    CHECK(transform(l, w) == causal_complement(w));
    CHECK(l == g * edge_reflection(wr) * inverse(g));
  }
}

TEST_CASE("reflection products") {
  const auto wr = standard_wedge<double>();
  CHECK(max_diff(reflection_product(wr, wr), Poincare<double>::identity()) <= 1e-15);
  const auto shifted = transform(translation(0, 1, 0, 0), wr);
  CHECK(max_diff(reflection_product(wr, shifted), translation(0, -2, 0, 0)) <= 1e-15);

  std::mt19937_64 rng(4);
  for (int k = 0; k < 1000; ++k) {
    const auto w1 = transform(random_poincare(rng), wr);
    const auto w2 = transform(random_poincare(rng), wr);
    const auto p = reflection_product(w1, w2);
    CHECK(p.orthochronous());
    CHECK(det_residual(p.lorentz) <= 1e-12);
    CHECK(distance_from_identity(p) > 1e-10);
  }
}

TEST_CASE("boost subgroups") {
  const auto wr = standard_wedge<double>();
  CHECK(max_diff(boost_subgroup(wr, 0.0), Poincare<double>::identity()) <= 1e-15);

  const double t = 0.13, s = 2.0 * std::numbers::pi * t;
  Poincare<double> expected;
  expected.lorentz = {{{std::cosh(s), std::sinh(s), 0, 0}, {std::sinh(s), std::cosh(s), 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  CHECK(max_diff(boost_subgroup(wr, t), expected) <= 1e-12);
  CHECK(same_wedge(transform(boost_subgroup(wr, t), wr), wr));

  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto g = random_poincare(rng);
    const auto w = transform(g, wr);
    const double t1 = 0.1 * (k % 7) - 0.3, t2 = 0.05 * (k % 5);
    const auto b1 = boost_subgroup(w, t1);
    const auto b2 = boost_subgroup(w, t2);
    CHECK(max_diff(b1 * b2, boost_subgroup(w, t1 + t2)) <= 1e-9);
    CHECK(same_wedge(transform(b1, w), w));
    const auto l = edge_reflection(w);
    CHECK(max_diff(l * b1, b1 * l) <= 1e-9);
    CHECK(max_diff(boost_subgroup(w, t1), g * boost_subgroup(wr, t1) * inverse(g)) <= 1e-9);
    // Farkas invariance: the boosted wedge includes and is included in w
    CHECK(includes(w, transform(b1, w)).holds);
    CHECK(includes(transform(b1, w), w).holds);
  }
}

TEST_CASE("covering map") {
  using C = Complex<double>;
  SL2<double> id{{{C(1), C(0)}, {C(0), C(1)}}};
  SL2<double> minus{{{C(-1), C(0)}, {C(0), C(-1)}}};
  CHECK(max_diff(covering_map(id), Poincare<double>::identity()) == 0.0);
  CHECK(max_diff(covering_map(minus), Poincare<double>::identity()) == 0.0);

  const double s = 0.7;
  SL2<double> b{{{C(std::exp(s / 2)), C(0)}, {C(0), C(std::exp(-s / 2))}}};
  Poincare<double> boost3;
  boost3.lorentz = {{{std::cosh(s), 0, 0, std::sinh(s)}, {0, 1, 0, 0}, {0, 0, 1, 0}, {std::sinh(s), 0, 0, std::cosh(s)}}};
  CHECK(max_diff(covering_map(b), boost3) <= 1e-14);
  CHECK(max_diff(covering_map(b), conjugation_oracle(b)) <= 1e-14);

  SL2<double> bad{{{C(2), C(0)}, {C(0), C(1)}}};
  CHECK_THROWS_AS(covering_map(bad), ValidationError);

  std::mt19937_64 rng(6);
  for (int k = 0; k < 300; ++k) {
    const auto a1 = random_sl2(rng), a2 = random_sl2(rng);
    SL2<double> prod, neg;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        prod[i][j] = a1[i][0] * a2[0][j] + a1[i][1] * a2[1][j];
        neg[i][j] = -a1[i][j];
      }
    CHECK(max_diff(covering_map(prod), covering_map(a1) * covering_map(a2)) <= 1e-12 * 100);
    CHECK(max_diff(covering_map(neg), covering_map(a1)) == 0.0);
    CHECK(max_diff(covering_map(a1), conjugation_oracle(a1)) <= 1e-12);
    const auto g = covering_map(a1);
    CHECK(g.orthochronous());
    CHECK(lorentz_residual(g.lorentz) <= 1e-12);
  }
}

TEST_CASE("rational boost through the covering map") {
  using C = Complex<Q>;
  SL2<Q> a{{{C(Q(3, 2)), C(Q(0))}, {C(Q(0)), C(Q(2, 3))}}};
  const auto g = covering_map(a);
  // cosh s = (9/4 + 4/9) / 2, sinh s = (9/4 - 4/9) / 2
  CHECK(g.lorentz[0][0] == Q(97, 72));
  CHECK(g.lorentz[3][3] == Q(97, 72));
  CHECK(g.lorentz[0][3] == Q(65, 72));
  CHECK(g.lorentz[3][0] == Q(65, 72));
  CHECK(g.lorentz[1][1] == 1);
  CHECK(g.lorentz[0][1] == 0);
  CHECK(lorentz_residual(g.lorentz) == 0.0);
}

TEST_CASE("rational subgroup orbits") {
  const auto wr = standard_wedge<Q>();
  const auto trivial = dense_subgroup_orbit(wr, {Poincare<Q>::identity()});
  REQUIRE(trivial.orbit.size() == 1);
  CHECK(trivial.orbit[0] == wr);
  CHECK(trivial.stable);

  std::vector<Poincare<Q>> elements;
  for (std::uint64_t seed = 100; seed < 120; ++seed) elements.push_back(rational_element(seed));
  const auto orbit = dense_subgroup_orbit(wr, elements);
  CHECK(orbit.stable);
  for (std::size_t i = 0; i + 1 < elements.size(); ++i) {
    const auto h = transitivity_witness(elements[i], elements[i + 1]);
    CHECK(transform(h, orbit.orbit[i]) == orbit.orbit[i + 1]);
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Q(3, 4));
  CHECK(parse_rational("-6/8") == Q(-3, 4));
  CHECK(parse_rational("0.125") == Q(1, 8));
  CHECK(parse_rational("-2.5e-1") == Q(-1, 4));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational(".5") == Q(1, 2));
  CHECK(to_string(Q(-3, 4)) == "-3/4");
  CHECK(to_string(Q(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ValidationError);
  CHECK(round_to_denominator(0.26, mpz_class(4)) == Q(1, 4));
  CHECK(round_to_denominator(-0.38, mpz_class(4)) == Q(-1, 4) - Q(1, 4));
}

TEST_CASE("approximate inclusion pairs") {
  const auto wr = standard_wedge<double>();
  const auto same = approximate_inclusion_pair(wr, wr, 1e-4);
  CHECK(same.inner == standard_wedge<Q>());
  CHECK(same.outer == standard_wedge<Q>());
  CHECK(same.inner_distance == 0.0);
  CHECK(same.outer_distance == 0.0);

  const auto shifted = transform(translation(0, 1, 0, 0), wr);
  const auto pair = approximate_inclusion_pair(shifted, wr, 1e-4);
  CHECK(pair.certificate.holds);
  CHECK(includes(pair.outer, pair.inner).holds);
  CHECK(pair.inner_distance < 1e-4);
  CHECK(pair.outer_distance < 1e-4);
  CHECK(transform(pair.inner_element, standard_wedge<Q>()) == pair.inner);

  // an irrational boost of a nested pair
  std::mt19937_64 rng(7);
  const auto g = boost_subgroup(transform(random_poincare(rng), wr), 0.1 * std::sqrt(2.0));
  const auto outer = transform(g, wr);
  const auto inner = transform(g * translation(0.3, 1.1, 0.2, 0), wr);
  REQUIRE(includes(outer, inner).holds);
  const auto p2 = approximate_inclusion_pair(inner, outer, 1e-3);
  CHECK(includes(p2.outer, p2.inner).holds);
  CHECK(p2.inner_distance < 1e-3);
  CHECK(p2.outer_distance < 1e-3);

  CHECK_THROWS_AS(approximate_inclusion_pair(wr, shifted, 1e-4), PreconditionError);
  CHECK_THROWS_AS(approximate_inclusion_pair(wr, wr, 0.0), ValidationError);
  // already rational: exact at any epsilon
  CHECK(approximate_inclusion_pair(shifted, wr, 1e-30).inner_distance == 0.0);
  CHECK_THROWS_AS(approximate_inclusion_pair(inner, outer, 1e-30), ConvergenceError);
}

TEST_CASE("Farkas inclusion agrees with sampling") {
  const auto wr = standard_wedge<double>();
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> kind(0, 3);
  std::normal_distribution<double> n;
  int included = 0;
  for (int k = 0; k < 200; ++k) {
    const auto g = random_poincare(rng);
    Poincare<double> h;
    switch (kind(rng)) {
      case 0: {  // nested: shift into the closure of W_R
        const double a0 = n(rng), a1 = std::abs(a0) + std::abs(n(rng));
        h = g * translation(a0, a1, n(rng), n(rng));
        break;
      }
      case 1:  // lightlike shift along the boundary
        h = g * translation(0.5, 0.5, n(rng), 0.0);
        break;
      case 2:  // shift out of W_R
        h = g * translation(n(rng), -std::abs(n(rng)) * 0.1, 0.0, 0.0);
        break;
      default:
        h = random_poincare(rng);
    }
    const auto outer = transform(g, wr), inner = transform(h, wr);
    const bool farkas = includes(outer, inner).holds;
    included += farkas;
    CHECK(farkas == sampled_inclusion(rng, outer, h, 20000));
  }
  CHECK(included > 50);
}
