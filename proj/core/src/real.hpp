#pragma once

#include "asymptotica/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <string>

namespace asymptotica::detail {

// Working type for sweeps whose differences fall far below double precision.
inline constexpr unsigned kHighDigits = 60;
using HighReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kHighDigits>,
                                               boost::multiprecision::et_off>;

template <class R>
inline constexpr int digits10_of() {
  if constexpr (std::is_same_v<R, double>) {
    return 16;
  } else {
    return static_cast<int>(kHighDigits);
  }
}

template <class R>
inline R from_string(const std::string& s) {
  if constexpr (std::is_same_v<R, double>) {
    return std::stod(s);
  } else {
    return R(s);
  }
}

template <class R>
inline R from_rational(const Rational& q) {
  if constexpr (std::is_same_v<R, double>) {
    return asymptotica::to_double(q);
  } else {
    return R(numerator_of(q).str()) / R(denominator_of(q).str());
  }
}

inline double to_double(double x) { return x; }
inline double to_double(const HighReal& x) { return x.convert_to<double>(); }

}  // namespace asymptotica::detail
