#include "gma/wedge.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

namespace gma {

double distance_from_identity(const Poincare<double>& g) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(g.lorentz[i][j] - (i == j ? 1.0 : 0.0)));
    d = std::max(d, std::abs(g.translation[i]));
  }
  return d;
}

Poincare<double> to_double(const Poincare<Rational>& g) {
  Poincare<double> h;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) h.lorentz[i][j] = g.lorentz[i][j].get_d();
    h.translation[i] = g.translation[i].get_d();
  }
  return h;
}

namespace {

Vec4<double> vec_to_double(const Vec4<Rational>& v) {
  return {v[0].get_d(), v[1].get_d(), v[2].get_d(), v[3].get_d()};
}

double vec_distance(const Vec4<double>& a, const Vec4<double>& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

} // namespace

Wedge<double> to_double(const Wedge<Rational>& w) {
  Wedge<double> v;
  v.plus = {vec_to_double(w.plus.covector), w.plus.offset.get_d()};
  v.minus = {vec_to_double(w.minus.covector), w.minus.offset.get_d()};
  v.edge_point = vec_to_double(w.edge_point);
  return v;
}

double wedge_distance(const Wedge<double>& a, const Wedge<double>& b) {
  return std::max({vec_distance(a.plus.covector, b.plus.covector), vec_distance(a.minus.covector, b.minus.covector),
                   vec_distance(a.edge_point, b.edge_point)});
}

Poincare<double> boost_subgroup(const Wedge<double>& w, double t) {
  return boost_by_factor(w, std::exp(2.0 * std::numbers::pi * t));
}

Poincare<Rational> rational_element(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 4), tnum(-8, 8), tden(1, 8);
  auto q = [&] {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
  };
  using C = Complex<Rational>;
  SL2<Rational> a;
  do {
    a[0][0] = C(q(), q());
  } while (a[0][0].norm2() == 0);
  a[0][1] = C(q(), q());
  a[1][0] = C(q(), q());
  a[1][1] = (C(Rational(1)) + a[0][1] * a[1][0]) / a[0][0];
  Poincare<Rational> g = covering_map(a);
  for (int i = 0; i < 4; ++i) {
    Rational t(tnum(rng), tden(rng));
    t.canonicalize();
    g.translation[i] = t;
  }
  return g;
}

OrbitReport dense_subgroup_orbit(const Wedge<Rational>& w0, const std::vector<Poincare<Rational>>& elements) {
  OrbitReport report;
  report.stable = true;
  for (const auto& h : elements) report.orbit.push_back(transform(h, w0));
  for (const auto& g : elements)
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const Wedge<Rational> direct = transform(g, report.orbit[k]);
      const Wedge<Rational> via_product = transform(g * elements[k], w0);
      report.stable = report.stable && direct == via_product;
    }
  return report;
}

Poincare<Rational> transitivity_witness(const Poincare<Rational>& g1, const Poincare<Rational>& g2) {
  return g2 * inverse(g1);
}

namespace {

using cd = std::complex<double>;

/// psi with psi psi^dagger = x0 + x . sigma for a future null vector x.
std::array<cd, 2> spinor(const Vec4<double>& x) {
  const double p = x[0] + x[3], m = x[0] - x[3];
  if (p >= m) {
    const double r = std::sqrt(p);
    return {cd(p / r, 0.0), cd(x[1], x[2]) / r};
  }
  const double r = std::sqrt(m);
  return {cd(x[1], -x[2]) / r, cd(m / r, 0.0)};
}

} // namespace

SL2<double> generating_sl2(const Wedge<double>& w) {
  const Wedge<double> r = standard_wedge<double>();
  const auto psi_r = spinor(raise(r.plus.covector));
  const auto phi_r = spinor(scaled(raise(r.minus.covector), -1.0));
  const auto psi = spinor(raise(w.plus.covector));
  const auto phi = spinor(scaled(raise(w.minus.covector), -1.0));

  const cd det_r = psi_r[0] * phi_r[1] - phi_r[0] * psi_r[1];
  const cd det_w = psi[0] * phi[1] - phi[0] * psi[1];
  const cd alpha = std::sqrt(det_r / det_w);
  // A = [psi phi] alpha [psi_r phi_r]^{-1}
  const cd inv[2][2] = {{phi_r[1] / det_r, -phi_r[0] / det_r}, {-psi_r[1] / det_r, psi_r[0] / det_r}};
  const cd m[2][2] = {{alpha * psi[0], alpha * phi[0]}, {alpha * psi[1], alpha * phi[1]}};
  SL2<double> a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cd z = m[i][0] * inv[0][j] + m[i][1] * inv[1][j];
      a[i][j] = Complex<double>(z.real(), z.imag());
    }
  return a;
}

Poincare<double> generating_element(const Wedge<double>& w) {
  Poincare<double> g = covering_map(generating_sl2(w));
  g.translation = w.edge_point;
  return g;
}

SL2<Rational> round_sl2(const SL2<double>& a, const mpz_class& denominator) {
  using C = Complex<Rational>;
  SL2<Rational> r;
  int pi = 0, pj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      r[i][j] = C(round_to_denominator(a[i][j].re, denominator), round_to_denominator(a[i][j].im, denominator));
      const double size = std::hypot(a[i][j].re, a[i][j].im);
      if (size > best) {
        best = size;
        pi = i;
        pj = j;
      }
    }
  if (r[pi][pj].norm2() == 0) throw ConvergenceError("rounding annihilated the SL(2,C) pivot", best);
  const C one(Rational(1));
  // solve ad - bc = 1 for the entry opposite the pivot
  if (pi == 0 && pj == 0)
    r[1][1] = (one + r[0][1] * r[1][0]) / r[0][0];
  else if (pi == 1 && pj == 1)
    r[0][0] = (one + r[0][1] * r[1][0]) / r[1][1];
  else if (pi == 0 && pj == 1)
    r[1][0] = (r[0][0] * r[1][1] - one) / r[0][1];
  else
    r[0][1] = (r[0][0] * r[1][1] - one) / r[1][0];
  return r;
}

ApproximateInclusion approximate_inclusion_pair(const Wedge<double>& inner, const Wedge<double>& outer,
                                                double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be positive");
  if (!includes(outer, inner).holds) throw PreconditionError("inner wedge is not contained in the outer wedge");

  const SL2<double> a = generating_sl2(outer);
  const Vec4<double> p_outer = outer.edge_point;
  Vec4<double> shift{0.0, 0.0, 0.0, 0.0};
  if (!same_wedge(inner, outer)) {
    // move the inner wedge strictly inside along its axis
    Vec4<double> axis = scaled(raise(outer.plus.covector) + raise(outer.minus.covector), -1.0);
    const double len = std::sqrt(dot(axis, axis));
    shift = (inner.edge_point - p_outer) + scaled(axis, epsilon / 4.0 / len);
  }
  const Vec4<double> p_inner = p_outer + shift;
  const Wedge<Rational> wr = standard_wedge<Rational>();

  double achieved = std::numeric_limits<double>::infinity();
  mpz_class d = 256;
  for (int doubling = 0; doubling <= 64; ++doubling, d *= 2) {
    Poincare<Rational> g_outer = covering_map(round_sl2(a, d));
    Poincare<Rational> g_inner = g_outer;
    for (int i = 0; i < 4; ++i) {
      g_outer.translation[i] = round_to_denominator(p_outer[i], d);
      g_inner.translation[i] = round_to_denominator(p_inner[i], d);
    }
    const Wedge<Rational> w_outer = transform(g_outer, wr);
    const Wedge<Rational> w_inner = transform(g_inner, wr);
    const InclusionCertificate<Rational> cert = includes(w_outer, w_inner);
    const double d_inner = wedge_distance(to_double(w_inner), inner);
    const double d_outer = wedge_distance(to_double(w_outer), outer);
    if (cert.holds) achieved = std::min(achieved, std::max(d_inner, d_outer));
    if (cert.holds && d_inner < epsilon && d_outer < epsilon)
      return {w_inner, w_outer, g_inner, g_outer, cert, d_inner, d_outer, d};
  }
  throw ConvergenceError("no certified rational pair within epsilon after 64 doublings", achieved);
}

} // namespace gma
