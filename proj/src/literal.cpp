#include "gma/literal.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <vector>

namespace gma {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

int parse_axis(const std::string& s) {
  if (s == "1" || s == "x") return 1;
  if (s == "2" || s == "y") return 2;
  if (s == "3" || s == "z") return 3;
  throw ValidationError("axis must be 1, 2, 3 or x, y, z, got '" + s + "'");
}

void expect_args(const std::string& name, const std::vector<std::string>& args, std::size_t n) {
  if (args.size() != n)
    throw ValidationError(name + " expects " + std::to_string(n) + " arguments, got " + std::to_string(args.size()));
}

PoincareLiteral exact_literal(const Poincare<Rational>& g) {
  return {true, g, to_double(g)};
}

PoincareLiteral floating_literal(const Poincare<double>& g) {
  PoincareLiteral lit;
  lit.exact = false;
  lit.floating = g;
  return lit;
}

PoincareLiteral parse_factor(const std::string& text) {
  if (text == "identity" || text == "id") return exact_literal(Poincare<Rational>::identity());
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') throw ValidationError("malformed Poincare factor '" + text + "'");
  const std::string name = trim(text.substr(0, open));
  const std::vector<std::string> args = split(text.substr(open + 1, text.size() - open - 2), ',');

  if (name == "T") {
    expect_args(name, args, 4);
    Vec4<Rational> a;
    for (int i = 0; i < 4; ++i) a[i] = parse_rational(args[static_cast<std::size_t>(i)]);
    return exact_literal(Poincare<Rational>::translation_by(a));
  }
  if (name == "rotpi") {
    expect_args(name, args, 1);
    const int axis = parse_axis(args[0]);
    Poincare<Rational> g;
    for (int i = 1; i <= 3; ++i)
      if (i != axis) g.lorentz[i][i] = -1;
    return exact_literal(g);
  }
  if (name == "boost" || name == "rot") {
    expect_args(name, args, 2);
    const int axis = parse_axis(args[0]);
    const double x = parse_rational(args[1]).get_d();
    Poincare<double> g;
    if (name == "boost") {
      g.lorentz[0][0] = g.lorentz[axis][axis] = std::cosh(x);
      g.lorentz[0][axis] = g.lorentz[axis][0] = std::sinh(x);
    } else {
      const int p = axis % 3 + 1, q = p % 3 + 1;
      g.lorentz[p][p] = g.lorentz[q][q] = std::cos(x);
      g.lorentz[p][q] = -std::sin(x);
      g.lorentz[q][p] = std::sin(x);
    }
    return floating_literal(g);
  }
  if (name == "L") {
    expect_args(name, args, 16);
    Poincare<Rational> g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g.lorentz[i][j] = parse_rational(args[static_cast<std::size_t>(4 * i + j)]);
    try {
      validate_proper(g);
      return exact_literal(g);
    } catch (const ValidationError&) {
      // decimal approximations of a floating Lorentz matrix
      const Poincare<double> f = to_double(g);
      validate_proper(f);
      return floating_literal(f);
    }
  }
  if (name == "sl2c") {
    expect_args(name, args, 8);
    SL2<Rational> a;
    for (int k = 0; k < 4; ++k)
      a[static_cast<std::size_t>(k / 2)][static_cast<std::size_t>(k % 2)] =
          Complex<Rational>(parse_rational(args[static_cast<std::size_t>(2 * k)]),
                            parse_rational(args[static_cast<std::size_t>(2 * k + 1)]));
    if (sl2_det(a) == Complex<Rational>(Rational(1))) return exact_literal(covering_map(a));
    SL2<double> f;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) f[i][j] = Complex<double>(a[i][j].re.get_d(), a[i][j].im.get_d());
    return floating_literal(covering_map(f));
  }
  throw ValidationError("unknown Poincare factor '" + name + "'");
}

std::string fmt(const Rational& q) { return to_string(q); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

template <typename T>
std::string vec_string(const Vec4<T>& v) {
  return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ", " + fmt(v[3]) + ")";
}

template <typename T>
std::string poincare_string(const Poincare<T>& g) {
  std::string s = "L = [";
  for (int i = 0; i < 4; ++i) {
    if (i) s += "; ";
    for (int j = 0; j < 4; ++j) s += (j ? ", " : "") + fmt(g.lorentz[i][j]);
  }
  return s + "], a = " + vec_string(g.translation);
}

template <typename T>
std::string wedge_string(const Wedge<T>& w) {
  return "{f+ = " + vec_string(w.plus.covector) + ".x + " + fmt(w.plus.offset) + ", f- = " +
         vec_string(w.minus.covector) + ".x + " + fmt(w.minus.offset) + ", edge point " +
         vec_string(w.edge_point) + "}";
}

} // namespace

PoincareLiteral parse_poincare(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ValidationError("empty Poincare literal");
  PoincareLiteral acc = exact_literal(Poincare<Rational>::identity());
  for (const std::string& part : split(t, '*')) {
    if (part.empty()) throw ValidationError("empty factor in Poincare literal '" + text + "'");
    const PoincareLiteral f = parse_factor(part);
    if (acc.exact && f.exact) acc.rational = acc.rational * f.rational;
    acc.exact = acc.exact && f.exact;
    acc.floating = acc.floating * f.floating;
  }
  if (acc.exact) acc.floating = to_double(acc.rational);
  return acc;
}

std::string format_vector(const Vec4<Rational>& v) { return vec_string(v); }
std::string format_vector(const Vec4<double>& v) { return vec_string(v); }
std::string format_poincare(const Poincare<Rational>& g) { return poincare_string(g); }
std::string format_poincare(const Poincare<double>& g) { return poincare_string(g); }
std::string format_wedge(const Wedge<Rational>& w) { return wedge_string(w); }
std::string format_wedge(const Wedge<double>& w) { return wedge_string(w); }

} // namespace gma
