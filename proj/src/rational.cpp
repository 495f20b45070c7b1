#include "gma/rational.hpp"

#include <cctype>
#include <cmath>

#include "gma/errors.hpp"

namespace gma {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(const std::string& text) {
  throw ValidationError("not an exact rational: '" + text + "'");
}

} // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) bad(raw);

  if (const auto slash = text.find('/'); slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
      neg = num[0] == '-';
      num.erase(0, 1);
    }
    if (!all_digits(num) || !all_digits(den)) bad(raw);
    if (mpz_class(den) == 0) bad(raw);
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  std::string s = text;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    std::string ex = s.substr(e + 1);
    s = s.substr(0, e);
    bool eneg = false;
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
      eneg = ex[0] == '-';
      ex.erase(0, 1);
    }
    if (!all_digits(ex) || ex.size() > 6) bad(raw);
    exponent = std::stol(ex) * (eneg ? -1 : 1);
  }
  std::string intpart = s, frac;
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    intpart = s.substr(0, dot);
    frac = s.substr(dot + 1);
  }
  if (intpart.empty() && frac.empty()) bad(raw);
  if ((!intpart.empty() && !all_digits(intpart)) || (!frac.empty() && !all_digits(frac))) bad(raw);

  mpz_class digits(intpart + frac, 10);
  exponent -= static_cast<long>(frac.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational round_to_denominator(double x, const mpz_class& denominator) {
  if (!std::isfinite(x)) throw ValidationError("cannot round a non-finite value");
  // x is a dyadic rational, so the scaled value is exact before rounding
  Rational exact(x);
  Rational scaled = exact * denominator;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), mpz_class(scaled.get_num() * 2 + scaled.get_den()).get_mpz_t(),
             mpz_class(scaled.get_den() * 2).get_mpz_t());
  Rational q(k, denominator);
  q.canonicalize();
  return q;
}

} // namespace gma
