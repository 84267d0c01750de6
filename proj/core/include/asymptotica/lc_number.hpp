#pragma once

#include "asymptotica/rational.hpp"

#include <complex>
#include <compare>
#include <optional>
#include <string>
#include <vector>

// Truncated Levi-Civita series  sum_i a_i rho^{q_i}  with exact rational
// exponents and complex double coefficients. rho is the positive
// infinitesimal; a number is only known modulo rho^truncation_order.
namespace asymptotica::lc {

using Coef = std::complex<double>;

// A term produced by an operation is dropped when its |coef| is below this
// fraction of the summed magnitudes of the contributions to its exponent
// (cancellation noise).
inline constexpr double kCleanupThreshold = 1e-14;

Rational default_truncation();  // 12

// Order of vanishing in rho. INFINITY is reserved for zero.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  Valuation(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)

  bool is_infinite() const noexcept { return !value_.has_value(); }
  const Rational& value() const;  // throws NotFinite for INFINITY

  friend bool operator==(const Valuation& a, const Valuation& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);

  std::string str() const;

 private:
  Valuation() = default;
  std::optional<Rational> value_;
};

struct Term {
  Rational exponent;
  Coef coef;

  friend bool operator==(const Term&, const Term&) = default;
};

class LCNumber {
 public:
  // Zero at the default truncation order.
  LCNumber();
  explicit LCNumber(Coef constant, Rational truncation = default_truncation());

  // Sorts, merges equal exponents, drops exact zeros, terms at or beyond the
  // truncation order, and terms below kCleanupThreshold * scale. A scale of 0
  // means "largest coefficient magnitude of the merged list"; a negative scale
  // disables the relative cleanup.
  static LCNumber from_terms(std::vector<Term> terms, Rational truncation, double scale = 0.0);
  // Canonical form of a sum of contributions: mass[k] is |terms[k].coef| before
  // any cancellation; merged exponents add their masses.
  static LCNumber from_contributions(std::vector<Term> terms, std::vector<double> mass, Rational truncation);
  static LCNumber monomial(Coef coef, Rational exponent, Rational truncation = default_truncation());
  static LCNumber rho(Rational truncation = default_truncation());

  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Rational& truncation_order() const noexcept { return truncation_; }
  // True when construction or the last operation discarded terms at or beyond
  // the truncation order.
  bool truncated() const noexcept { return truncated_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_real() const noexcept;

  Valuation valuation() const;
  // Valuation, or the truncation order for zero: the lower bound on the
  // valuation of the unknown value this number represents.
  Rational effective_valuation() const;
  Coef leading_coefficient() const;  // 0 for zero
  Coef coefficient_at(const Rational& exponent) const;
  double max_magnitude() const noexcept;

  // Lowers the truncation order (never raises it).
  LCNumber truncated_to(const Rational& order) const;
  // Multiplies by rho^shift; the truncation order moves with it.
  LCNumber shifted(const Rational& shift) const;
  LCNumber scaled(Coef factor) const;
  LCNumber conj() const;

  LCNumber operator-() const;
  LCNumber& operator+=(const LCNumber& other);
  LCNumber& operator-=(const LCNumber& other);
  LCNumber& operator*=(const LCNumber& other);

  friend LCNumber operator+(LCNumber a, const LCNumber& b) { return a += b; }
  friend LCNumber operator-(LCNumber a, const LCNumber& b) { return a -= b; }
  friend LCNumber operator*(LCNumber a, const LCNumber& b) { return a *= b; }
  friend LCNumber operator/(const LCNumber& a, const LCNumber& b);

  // Canonical forms are unique: equality is equality of term lists.
  friend bool operator==(const LCNumber& a, const LCNumber& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term> terms_;
  Rational truncation_;
  bool truncated_ = false;
};

enum class ArithOp { add, sub, mul };
LCNumber arith(const LCNumber& a, const LCNumber& b, ArithOp op);

// Leading-monomial factorization, then long division of 1 by the unit part
// (the truncated geometric series, computed coefficient by coefficient). The
// result is known to order truncation - 2 v(a).
LCNumber inverse(const LCNumber& a);

// Square root of a non-negative real number: the binomial series of the unit
// part, computed coefficient by coefficient from s^2 = 1 + u.
// Result is known to order truncation - v(a)/2.
LCNumber sqrt_nonneg(const LCNumber& a);

LCNumber pow(const LCNumber& a, int exponent);

// |a|_v = exp(-v(a)),  d_v(a, b) = |a - b|_v.
double ultra_norm(const LCNumber& a);
double ultra_metric(const LCNumber& a, const LCNumber& b);

// Field order on real numbers: sign of the leading coefficient.
int sign(const LCNumber& a);
int compare(const LCNumber& a, const LCNumber& b);
LCNumber abs(const LCNumber& a);

enum class Magnitude { infinitesimal, finite, infinitely_large };
Magnitude classify(const LCNumber& a);
const char* to_string(Magnitude m);
Coef standard_part(const LCNumber& a);

// Human-readable series, e.g. "1 - rho + rho^2 + O(rho^12)".
std::string to_string(const LCNumber& a, int digits = 12);

}  // namespace asymptotica::lc
