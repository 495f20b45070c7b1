#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "gma/errors.hpp"
#include "gma/rational.hpp"

// Minkowski wedges and the proper Poincare group, with signature (+,-,-,-).
// Everything is templated over the scalar: double for floating geometry,
// Rational for exact computations in the rational subgroup.

namespace gma {

template <typename T>
using Vec4 = std::array<T, 4>;
template <typename T>
using Mat4 = std::array<std::array<T, 4>, 4>;
/// 2x2 complex matrix, row-major.
template <typename T>
using SL2 = std::array<std::array<Complex<T>, 2>, 2>;

/// Tolerance of floating wedge comparisons. Rational data compare exactly.
inline constexpr double kWedgeTol = 1e-10;

namespace detail {

template <typename T>
inline constexpr bool is_exact = std::is_same_v<T, Rational>;

template <typename T>
bool near_zero(const T& x, double tol) {
  if constexpr (is_exact<T>) {
    (void)tol;
    return sgn(x) == 0;
  } else {
    return std::abs(x) <= tol;
  }
}

template <typename T>
bool at_least(const T& x, double tol) {
  if constexpr (is_exact<T>) {
    (void)tol;
    return sgn(x) >= 0;
  } else {
    return x >= -tol;
  }
}

template <typename T>
T eta(int i) {
  return i == 0 ? T(1) : T(-1);
}

} // namespace detail

template <typename T>
T dot(const Vec4<T>& a, const Vec4<T>& b) {
  T s(0);
  for (int i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
T minkowski(const Vec4<T>& a, const Vec4<T>& b) {
  return T(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]);
}

/// eta v, which turns a covector into a vector and back.
template <typename T>
Vec4<T> raise(const Vec4<T>& v) {
  return {v[0], T(-v[1]), T(-v[2]), T(-v[3])};
}

template <typename T>
Mat4<T> identity4() {
  Mat4<T> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = T(i == j ? 1 : 0);
  return m;
}

template <typename T>
Mat4<T> operator*(const Mat4<T>& a, const Mat4<T>& b) {
  Mat4<T> c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      T s(0);
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

template <typename T>
Vec4<T> operator*(const Mat4<T>& a, const Vec4<T>& x) {
  Vec4<T> y;
  for (int i = 0; i < 4; ++i) {
    T s(0);
    for (int k = 0; k < 4; ++k) s += a[i][k] * x[k];
    y[i] = s;
  }
  return y;
}

template <typename T>
Vec4<T> operator+(const Vec4<T>& a, const Vec4<T>& b) {
  return {T(a[0] + b[0]), T(a[1] + b[1]), T(a[2] + b[2]), T(a[3] + b[3])};
}

template <typename T>
Vec4<T> operator-(const Vec4<T>& a, const Vec4<T>& b) {
  return {T(a[0] - b[0]), T(a[1] - b[1]), T(a[2] - b[2]), T(a[3] - b[3])};
}

template <typename T>
Vec4<T> scaled(const Vec4<T>& a, const T& s) {
  return {T(a[0] * s), T(a[1] * s), T(a[2] * s), T(a[3] * s)};
}

/// Inverse of a Lorentz matrix, eta L^T eta.
template <typename T>
Mat4<T> lorentz_inverse(const Mat4<T>& l) {
  Mat4<T> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = T(detail::eta<T>(i) * l[j][i] * detail::eta<T>(j));
  return m;
}

template <typename T>
T determinant(const Mat4<T>& m) {
  // expansion in 2x2 minors of the first two rows
  auto minor2 = [&](int r0, int r1, int c0, int c1) {
    return T(m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]);
  };
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  T det(0);
  for (int p = 0; p < 6; ++p) {
    const int c0 = pairs[p][0], c1 = pairs[p][1];
    const int d0 = pairs[5 - p][0], d1 = pairs[5 - p][1];
    const int sign = (c0 + c1) % 2 == 1 ? 1 : -1;
    det += T(sign) * minor2(0, 1, c0, c1) * minor2(2, 3, d0, d1);
  }
  return det;
}

/// x -> lorentz x + translation.
template <typename T>
struct Poincare {
  Mat4<T> lorentz = identity4<T>();
  Vec4<T> translation{T(0), T(0), T(0), T(0)};

  static Poincare identity() { return {}; }
  static Poincare translation_by(const Vec4<T>& a) {
    Poincare g;
    g.translation = a;
    return g;
  }

  Vec4<T> apply(const Vec4<T>& x) const { return lorentz * x + translation; }
  bool orthochronous() const { return lorentz[0][0] > 0; }
};

template <typename T>
Poincare<T> operator*(const Poincare<T>& a, const Poincare<T>& b) {
  Poincare<T> c;
  c.lorentz = a.lorentz * b.lorentz;
  c.translation = a.lorentz * b.translation + a.translation;
  return c;
}

template <typename T>
Poincare<T> inverse(const Poincare<T>& g) {
  Poincare<T> h;
  h.lorentz = lorentz_inverse(g.lorentz);
  const Vec4<T> back = h.lorentz * g.translation;
  h.translation = {T(-back[0]), T(-back[1]), T(-back[2]), T(-back[3])};
  return h;
}

template <typename T>
bool operator==(const Poincare<T>& a, const Poincare<T>& b) {
  return a.lorentz == b.lorentz && a.translation == b.translation;
}

/// max |L^T eta L - eta| / max(1, max|L|^2); exactly 0 for rational Lorentz
/// matrices.
template <typename T>
double lorentz_residual(const Mat4<T>& l) {
  double worst = 0.0, scale = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      T s(0);
      for (int k = 0; k < 4; ++k) s += l[k][i] * detail::eta<T>(k) * l[k][j];
      const T target = T(i == j ? detail::eta<T>(i) : T(0));
      worst = std::max(worst, std::abs(to_double(T(s - target))));
      scale = std::max(scale, std::abs(to_double(l[i][j])) * std::abs(to_double(l[i][j])));
    }
  return worst / scale;
}

/// Throws ValidationError unless g is a Lorentz transformation with
/// determinant +1 followed by a translation.
template <typename T>
void validate_proper(const Poincare<T>& g) {
  if constexpr (detail::is_exact<T>) {
    if (lorentz_residual(g.lorentz) != 0.0) throw ValidationError("matrix does not preserve the Minkowski form");
    if (determinant(g.lorentz) != 1) throw ValidationError("improper Lorentz transformation (det != +1)");
  } else {
    if (!(lorentz_residual(g.lorentz) <= 1e-12))
      throw ValidationError("matrix does not preserve the Minkowski form");
    double scale = 1.0;
    for (const auto& row : g.lorentz)
      for (double x : row) scale = std::max(scale, std::abs(x));
    if (!(std::abs(determinant(g.lorentz) - 1.0) <= 1e-12 * std::pow(scale, 4)))
      throw ValidationError("improper Lorentz transformation (det != +1)");
  }
}

/// Largest entry of (L - 1, a).
double distance_from_identity(const Poincare<double>& g);

Poincare<double> to_double(const Poincare<Rational>& g);
inline const Poincare<double>& to_double(const Poincare<double>& g) { return g; }

/// x -> covector . x + offset
template <typename T>
struct AffineFunctional {
  Vec4<T> covector;
  T offset{};

  T operator()(const Vec4<T>& x) const { return T(dot(covector, x) + offset); }
};

/// {x : plus(x) > 0 and minus(x) > 0} with null covectors normalised to time
/// component +1 (plus) and -1 (minus), and the minimum-norm point of the
/// edge {plus = minus = 0}.
template <typename T>
struct Wedge {
  AffineFunctional<T> plus;
  AffineFunctional<T> minus;
  Vec4<T> edge_point;

  bool contains(const Vec4<T>& x) const { return plus(x) > 0 && minus(x) > 0; }
};

template <typename T>
bool operator==(const Wedge<T>& a, const Wedge<T>& b) {
  return a.plus.covector == b.plus.covector && a.plus.offset == b.plus.offset &&
         a.minus.covector == b.minus.covector && a.minus.offset == b.minus.offset;
}

/// Canonical wedge {f1 > 0, f2 > 0}. Throws ValidationError when the two
/// functionals are not null, or do not have time components of opposite sign.
template <typename T>
Wedge<T> make_wedge(const AffineFunctional<T>& f1, const AffineFunctional<T>& f2) {
  auto normalise = [](const AffineFunctional<T>& f) {
    const T t = f.covector[0];
    if (detail::near_zero(t, 0.0)) throw ValidationError("wedge functional is not lightlike");
    const T s = t > 0 ? T(1 / t) : T(-1 / t);
    AffineFunctional<T> g{scaled(f.covector, s), T(f.offset * s)};
    const T norm = minkowski(raise(g.covector), raise(g.covector));
    if (!detail::near_zero(norm, kWedgeTol)) throw ValidationError("wedge functional is not lightlike");
    return g;
  };
  AffineFunctional<T> a = normalise(f1), b = normalise(f2);
  if (a.covector[0] < 0) std::swap(a, b);
  if (!(a.covector[0] > 0) || !(b.covector[0] < 0))
    throw ValidationError("wedge functionals must point to opposite time directions");
  bool dependent = true;
  for (int i = 0; i < 4; ++i) dependent = dependent && detail::near_zero(T(a.covector[i] + b.covector[i]), kWedgeTol);
  if (dependent) throw ValidationError("wedge functionals are linearly dependent");

  // edge point p = C^T (C C^T)^{-1} (-b)
  const T g00 = dot(a.covector, a.covector), g01 = dot(a.covector, b.covector),
          g11 = dot(b.covector, b.covector);
  const T det = T(g00 * g11 - g01 * g01);
  const T r0 = T(-a.offset), r1 = T(-b.offset);
  const T y0 = T((g11 * r0 - g01 * r1) / det), y1 = T((g00 * r1 - g01 * r0) / det);
  Wedge<T> w{a, b, scaled(a.covector, y0) + scaled(b.covector, y1)};
  return w;
}

/// {x : x1 > |x0|}
template <typename T>
Wedge<T> standard_wedge() {
  AffineFunctional<T> p{{T(1), T(1), T(0), T(0)}, T(0)};
  AffineFunctional<T> m{{T(-1), T(1), T(0), T(0)}, T(0)};
  return make_wedge(p, m);
}

/// g W = {g x : x in W}.
template <typename T>
Wedge<T> transform(const Poincare<T>& g, const Wedge<T>& w) {
  validate_proper(g);
  // f(g^{-1} y) = (L^{-T} c) . y + b - (L^{-T} c) . a, with L^{-T} = eta L eta
  auto push = [&](const AffineFunctional<T>& f) {
    const Vec4<T> c = raise(g.lorentz * raise(f.covector));
    return AffineFunctional<T>{c, T(f.offset - dot(c, g.translation))};
  };
  return make_wedge(push(w.plus), push(w.minus));
}

template <typename T>
Wedge<T> causal_complement(const Wedge<T>& w) {
  auto neg = [](const AffineFunctional<T>& f) {
    return AffineFunctional<T>{scaled(f.covector, T(-1)), T(-f.offset)};
  };
  return make_wedge(neg(w.plus), neg(w.minus));
}

/// max over canonical data (both covectors and the edge point) of the entry
/// difference.
double wedge_distance(const Wedge<double>& a, const Wedge<double>& b);

Wedge<double> to_double(const Wedge<Rational>& w);
inline const Wedge<double>& to_double(const Wedge<double>& w) { return w; }

/// Exact equality for rational wedges, distance <= kWedgeTol otherwise.
template <typename T>
bool same_wedge(const Wedge<T>& a, const Wedge<T>& b) {
  if constexpr (detail::is_exact<T>)
    return a == b;
  else
    return wedge_distance(a, b) <= kWedgeTol;
}

/// g = alpha f_plus + beta f_minus + constant over the inner wedge's
/// functionals.
template <typename T>
struct FarkasTerm {
  T alpha{};
  T beta{};
  T constant{};
  bool valid = false;
};

template <typename T>
struct InclusionCertificate {
  bool holds = false;
  /// One term per defining functional (plus, minus) of the outer wedge.
  std::array<FarkasTerm<T>, 2> terms;
};

/// Decides inner subset of outer.
template <typename T>
InclusionCertificate<T> includes(const Wedge<T>& outer, const Wedge<T>& inner) {
  const auto& cp = inner.plus.covector;
  const auto& cm = inner.minus.covector;
  const T g00 = dot(cp, cp), g01 = dot(cp, cm), g11 = dot(cm, cm);
  const T det = T(g00 * g11 - g01 * g01);
  InclusionCertificate<T> cert;
  cert.holds = true;
  const AffineFunctional<T>* outer_fs[2] = {&outer.plus, &outer.minus};
  for (int k = 0; k < 2; ++k) {
    const auto& g = *outer_fs[k];
    const T r0 = dot(cp, g.covector), r1 = dot(cm, g.covector);
    FarkasTerm<T> term;
    term.alpha = T((g11 * r0 - g01 * r1) / det);
    term.beta = T((g00 * r1 - g01 * r0) / det);
    const Vec4<T> rest = g.covector - scaled(cp, term.alpha) - scaled(cm, term.beta);
    bool in_span = true;
    for (const auto& x : rest) in_span = in_span && detail::near_zero(x, kWedgeTol);
    term.constant = T(g.offset - term.alpha * inner.plus.offset - term.beta * inner.minus.offset);
    term.valid = in_span && detail::at_least(term.alpha, kWedgeTol) && detail::at_least(term.beta, kWedgeTol) &&
                 detail::at_least(term.constant, kWedgeTol);
    cert.holds = cert.holds && term.valid;
    cert.terms[static_cast<std::size_t>(k)] = term;
  }
  return cert;
}

namespace detail {

/// Projections Q_plus = u_+ c_-^T / g and Q_minus = u_- c_+^T / g with
/// u = eta c and g = c_+ . u_-; the identity minus both projects onto the
/// edge directions.
template <typename T>
void edge_projections(const Wedge<T>& w, Mat4<T>& q_plus, Mat4<T>& q_minus) {
  const auto& cp = w.plus.covector;
  const auto& cm = w.minus.covector;
  const Vec4<T> up = raise(cp), um = raise(cm);
  const T g = dot(cp, um);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      q_plus[i][j] = T(up[i] * cm[j] / g);
      q_minus[i][j] = T(um[i] * cp[j] / g);
    }
}

template <typename T>
Poincare<T> fixing_edge(const Wedge<T>& w, const Mat4<T>& l) {
  Poincare<T> g;
  g.lorentz = l;
  g.translation = w.edge_point - l * w.edge_point;
  return g;
}

} // namespace detail

/// The antichronous involution through the edge of w; maps w onto w'.
template <typename T>
Poincare<T> edge_reflection(const Wedge<T>& w) {
  Mat4<T> qp, qm;
  detail::edge_projections(w, qp, qm);
  Mat4<T> l = identity4<T>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) l[i][j] -= T(2) * (qp[i][j] + qm[i][j]);
  return detail::fixing_edge(w, l);
}

template <typename T>
Poincare<T> reflection_product(const Wedge<T>& w1, const Wedge<T>& w2) {
  return edge_reflection(w1) * edge_reflection(w2);
}

/// Boost leaving w invariant that scales the plus functional by `factor`
/// (factor = e^s for rapidity s). Exact for rational factors.
template <typename T>
Poincare<T> boost_by_factor(const Wedge<T>& w, const T& factor) {
  if (!(factor > 0)) throw ValidationError("boost factor must be positive");
  Mat4<T> qp, qm;
  detail::edge_projections(w, qp, qm);
  Mat4<T> l = identity4<T>();
  const T inv = T(1 / factor);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) l[i][j] += T((factor - 1) * qm[i][j] + (inv - 1) * qp[i][j]);
  return detail::fixing_edge(w, l);
}

/// lambda_W(2 pi t): the boosts of w with rapidity 2 pi t.
Poincare<double> boost_subgroup(const Wedge<double>& w, double t);

template <typename T>
Complex<T> sl2_det(const SL2<T>& a) {
  return a[0][0] * a[1][1] - a[0][1] * a[1][0];
}

/// Lorentz transformation of X -> A X A^dagger, X = x0 + x . sigma, with
/// entries (1/2) tr(sigma_mu A sigma_nu A^dagger). Throws ValidationError when
/// det A != 1.
template <typename T>
Poincare<T> covering_map(const SL2<T>& a) {
  using C = Complex<T>;
  const Complex<T> d = sl2_det(a);
  if constexpr (detail::is_exact<T>) {
    if (!(d == C(T(1), T(0)))) throw ValidationError("SL(2,C) element must have determinant 1");
  } else {
    double scale = 1.0;
    for (const auto& row : a)
      for (const auto& z : row) scale = std::max(scale, z.norm2());
    if (!(std::hypot(d.re - 1.0, d.im) <= 1e-12 * scale))
      throw ValidationError("SL(2,C) element must have determinant 1");
  }
  using M2 = std::array<std::array<C, 2>, 2>;
  const C o(T(1)), z(T(0)), i(T(0), T(1)), mi(T(0), T(-1)), mo(T(-1));
  const M2 sigma[4] = {{{{o, z}, {z, o}}}, {{{z, o}, {o, z}}}, {{{z, mi}, {i, z}}}, {{{o, z}, {z, mo}}}};
  auto mul = [](const M2& x, const M2& y) {
    M2 r;
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) r[p][q] = x[p][0] * y[0][q] + x[p][1] * y[1][q];
    return r;
  };
  M2 adj;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) adj[p][q] = a[q][p].conj();
  Poincare<T> g;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const M2 prod = mul(mul(sigma[mu], a), mul(sigma[nu], adj));
      g.lorentz[mu][nu] = T((prod[0][0].re + prod[1][1].re) / 2);
    }
  return g;
}

// ---------------------------------------------------------------------------
// The rational subgroup: SL(2,C) elements with rational real and imaginary
// parts, together with rational translations.

/// Random element of the rational subgroup, deterministic in the seed.
Poincare<Rational> rational_element(std::uint64_t seed);

struct OrbitReport {
  std::vector<Wedge<Rational>> orbit;
  /// g (h W0) == (g h) W0 for every listed g and every orbit member h W0.
  bool stable = false;
};

OrbitReport dense_subgroup_orbit(const Wedge<Rational>& w0, const std::vector<Poincare<Rational>>& elements);

/// The element g2 g1^{-1}, which maps g1 W0 onto g2 W0.
Poincare<Rational> transitivity_witness(const Poincare<Rational>& g1, const Poincare<Rational>& g2);

/// An SL(2,C) element whose Lorentz image maps the standard wedge's
/// directions onto those of w, built from spinors of the null normals.
SL2<double> generating_sl2(const Wedge<double>& w);
/// (covering_map(generating_sl2(w)), edge point of w); maps W_R onto w.
Poincare<double> generating_element(const Wedge<double>& w);

/// Rounds real and imaginary parts to multiples of 1/denominator, then
/// restores det = 1 exactly by re-solving for the entry opposite to the
/// largest one.
SL2<Rational> round_sl2(const SL2<double>& a, const mpz_class& denominator);

struct ApproximateInclusion {
  Wedge<Rational> inner;
  Wedge<Rational> outer;
  Poincare<Rational> inner_element; ///< inner = inner_element W_R
  Poincare<Rational> outer_element; ///< outer = outer_element W_R
  InclusionCertificate<Rational> certificate;
  double inner_distance = 0.0;
  double outer_distance = 0.0;
  mpz_class denominator;
};

/// Rational wedges within epsilon of inner and outer that are still nested,
/// with an exact inclusion certificate. Throws PreconditionError when inner
/// is not inside outer, ConvergenceError when 64 denominator doublings do not
/// reach epsilon.
ApproximateInclusion approximate_inclusion_pair(const Wedge<double>& inner, const Wedge<double>& outer,
                                                double epsilon);

} // namespace gma
