#pragma once

#include <string>

#include "gma/wedge.hpp"

namespace gma {

/// A Poincare element written as a product of factors, e.g.
/// "T(0,1,0,0) * rotpi(3) * sl2c(3/2,0, 0,0, 0,0, 2/3,0)".
///
/// Factors: identity, T(a0,a1,a2,a3), boost(axis,rapidity), rot(axis,angle),
/// rotpi(axis), L(16 entries, row-major), sl2c(re a, im a, re b, im b, re c,
/// im c, re d, im d). Axes are 1, 2, 3 (or x, y, z). Numbers are decimals or
/// "p/q"; they stay exact unless written in a form a rational cannot hold
/// exactly (boost and rot always give floating results).
struct PoincareLiteral {
  bool exact = true;
  Poincare<Rational> rational; ///< meaningful when exact
  Poincare<double> floating;
};

/// Throws ValidationError on syntax errors or non-Lorentz matrices.
PoincareLiteral parse_poincare(const std::string& text);

std::string format_vector(const Vec4<Rational>& v);
std::string format_vector(const Vec4<double>& v);
std::string format_poincare(const Poincare<Rational>& g);
std::string format_poincare(const Poincare<double>& g);
std::string format_wedge(const Wedge<Rational>& w);
std::string format_wedge(const Wedge<double>& w);

} // namespace gma
