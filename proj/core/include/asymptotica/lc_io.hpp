#pragma once

#include "asymptotica/lc_number.hpp"

#include <string>
#include <string_view>

namespace asymptotica::lc {

// {"terms":[[num,den,re,im],...],"trunc":[num,den]}. Exponents round-trip
// exactly; numerators or denominators outside int64 are written as decimal
// strings.
std::string to_json(const LCNumber& a);
LCNumber from_json(std::string_view json);

// Expression syntax for series: numbers, rho, i, + - * /, "^" with a rational
// exponent on rho (rho^(1/2), rho^-1) or an integer exponent elsewhere, and
// the functions inverse, sqrt, abs, conj.
LCNumber parse_lc(std::string_view text, const Rational& truncation = default_truncation());

}  // namespace asymptotica::lc
