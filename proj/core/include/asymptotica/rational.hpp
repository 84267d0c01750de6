#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace asymptotica {

// Exact arbitrary-precision rationals: exponents, valuations, log-weights.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

double to_double(const Rational& q);

// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "p/q", and finite decimals such as "-0.25" or "1e-3" (converted exactly).
Rational parse_rational(std::string_view text);

// The exact binary value of a finite double.
Rational rational_from_double(double x);

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

}  // namespace asymptotica
