#pragma once

// Shared nlohmann/json conversions for the serializers. Private to the core
// library.

#include "asymptotica/errors.hpp"
#include "asymptotica/lc_number.hpp"
#include "asymptotica/rational.hpp"

#include <nlohmann/json.hpp>

#include <limits>

namespace asymptotica::detail {

using nlohmann::json;

inline json integer_to_json(const BigInt& v) {
  if (v >= BigInt(std::numeric_limits<long long>::min()) && v <= BigInt(std::numeric_limits<long long>::max())) {
    return json(v.convert_to<long long>());
  }
  return json(v.str());
}

inline BigInt integer_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw FormatError("expected an integer, got " + j.dump());
}

inline json rational_to_json(const Rational& q) {
  return json::array({integer_to_json(numerator_of(q)), integer_to_json(denominator_of(q))});
}

inline Rational rational_from_json(const json& j) {
  if (j.is_array() && j.size() == 2) {
    BigInt den = integer_from_json(j[1]);
    if (den == 0) throw FormatError("zero denominator in " + j.dump());
    return Rational(integer_from_json(j[0]), den);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw FormatError("expected a rational [num, den], got " + j.dump());
}

inline json lc_to_json(const lc::LCNumber& a) {
  json terms = json::array();
  for (const auto& t : a.terms()) {
    terms.push_back(json::array({integer_to_json(numerator_of(t.exponent)), integer_to_json(denominator_of(t.exponent)),
                                 t.coef.real(), t.coef.imag()}));
  }
  return json{{"terms", terms}, {"trunc", rational_to_json(a.truncation_order())}};
}

inline lc::LCNumber lc_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.contains("trunc")) {
    throw FormatError("LC number needs \"terms\" and \"trunc\"");
  }
  std::vector<lc::Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 4) throw FormatError("LC term must be [num, den, re, im]");
    BigInt den = integer_from_json(t[1]);
    if (den == 0) throw FormatError("zero denominator in LC term");
    terms.push_back({Rational(integer_from_json(t[0]), den), lc::Coef(t[2].get<double>(), t[3].get<double>())});
  }
  // The file holds a canonical form: keep every stored coefficient.
  return lc::LCNumber::from_terms(std::move(terms), rational_from_json(j.at("trunc")), -1.0);
}

}  // namespace asymptotica::detail
