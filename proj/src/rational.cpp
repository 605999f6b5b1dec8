#include "tfne/rational.hpp"

namespace tfne {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(text));
    }
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational: '" + text + "'");
  }
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_dyadic(const Rational& r) {
  Integer den = denominator(r);
  while (den % 2 == 0) den /= 2;
  return den == 1;
}

unsigned dyadic_exponent(const Rational& r) {
  if (!is_dyadic(r)) throw std::invalid_argument("not dyadic: " + format_rational(r));
  Integer den = denominator(r);
  unsigned m = 0;
  while (den > 1) {
    den /= 2;
    ++m;
  }
  return m;
}

}  // namespace tfne
