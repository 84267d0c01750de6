#include "asymptotica/rational.hpp"

#include "asymptotica/errors.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace asymptotica {

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  const BigInt den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

namespace {

// The string constructor reads a leading 0 as an octal prefix.
BigInt decimal(std::string s) {
  const bool negative = !s.empty() && s[0] == '-';
  const std::size_t start = negative ? 1 : 0;
  const auto first = s.find_first_not_of('0', start);
  s.erase(start, (first == std::string::npos ? s.size() - 1 : first) - start);
  return BigInt(s);
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty integer in rational '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') ++i;
  if (i == text.size()) throw ParseError("bad integer in rational '" + std::string(whole) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw ParseError("bad integer in rational '" + std::string(whole) + "'");
    }
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return decimal(s);
}

Rational pow10(long long e) {
  BigInt p = 1;
  for (long long k = 0; k < (e < 0 ? -e : e); ++k) p *= 10;
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = parse_integer(text.substr(e + 1), text).convert_to<long long>();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw ParseError("bad number '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw ParseError("bad number '" + std::string(text) + "'");
  Rational value = Rational(decimal(digits)) * pow10(exponent - frac_digits);
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite value cannot be made rational");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{BigInt(scaled)};
  BigInt two_pow = 1;
  two_pow <<= static_cast<unsigned>(exp < 0 ? -exp : exp);
  if (exp < 0) return r / Rational(two_pow);
  return r * Rational(two_pow);
}

BigInt floor_of(const Rational& q) {
  BigInt num = numerator_of(q);
  BigInt den = denominator_of(q);
  BigInt quot = num / den;
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

BigInt ceil_of(const Rational& q) {
  BigInt f = floor_of(q);
  if (Rational(f) == q) return f;
  return f + 1;
}

}  // namespace asymptotica
