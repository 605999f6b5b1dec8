#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace tfne {

// Exact arithmetic everywhere: equilibrium and threat verdicts hinge on
// strict inequalities, so probabilities and payoffs are never floats.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long num, long den = 1) {
  return Rational(Integer(num), Integer(den));
}

// Parses "a/b" or a plain integer. Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

// Canonical text form: "a/b", or "a" when the denominator is 1.
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

// True iff r = a / 2^m for some integers a, m >= 0.
bool is_dyadic(const Rational& r);

// Smallest m with r * 2^m integral. Requires is_dyadic(r).
unsigned dyadic_exponent(const Rational& r);

}  // namespace tfne
