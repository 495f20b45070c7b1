#pragma once

#include <string>

#include <gmpxx.h>

namespace gma {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal such as "-0.125" or "3e-2" exactly.
/// Throws ValidationError on anything else.
Rational parse_rational(const std::string& text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Nearest k / denominator to x.
Rational round_to_denominator(double x, const mpz_class& denominator);

/// Minimal complex number over an arbitrary field of reals; enough for 2x2
/// spinor algebra in exact arithmetic.
template <typename T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r, T i = T(0)) : re(std::move(r)), im(std::move(i)) {}

  Complex conj() const { return {re, T(-im)}; }
  T norm2() const { return T(re * re + im * im); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {T(a.re + b.re), T(a.im + b.im)};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {T(a.re - b.re), T(a.im - b.im)};
  }
  friend Complex operator-(const Complex& a) { return {T(-a.re), T(-a.im)}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {T(a.re * b.re - a.im * b.im), T(a.re * b.im + a.im * b.re)};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const T d = b.norm2();
    return {T((a.re * b.re + a.im * b.im) / d), T((a.im * b.re - a.re * b.im) / d)};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

} // namespace gma
