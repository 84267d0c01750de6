#include "asymptotica/lc_number.hpp"

#include "asymptotica/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace asymptotica::lc {

Rational default_truncation() { return Rational(12); }

// ---------------------------------------------------------------- Valuation

const Rational& Valuation::value() const {
  if (!value_) throw NotFinite("valuation of zero is INFINITY");
  return *value_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*a.value_ > *b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  return Valuation(*a.value_ + *b.value_);
}

std::string Valuation::str() const { return value_ ? asymptotica::to_string(*value_) : "INFINITY"; }

// ----------------------------------------------------------------- LCNumber

LCNumber::LCNumber() : truncation_(default_truncation()) {}

LCNumber::LCNumber(Coef constant, Rational truncation) : truncation_(std::move(truncation)) {
  if (constant != Coef(0.0)) {
    if (truncation_ > 0) {
      terms_.push_back({Rational(0), constant});
    } else {
      truncated_ = true;
    }
  }
}

LCNumber LCNumber::from_terms(std::vector<Term> terms, Rational truncation, double scale) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  LCNumber out;
  out.truncation_ = std::move(truncation);
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(std::move(t));
    }
  }
  if (scale == 0.0) {
    for (const auto& t : merged) scale = std::max(scale, std::abs(t.coef));
  }
  const double floor = scale > 0.0 ? kCleanupThreshold * scale : 0.0;
  for (auto& t : merged) {
    if (t.exponent >= out.truncation_) {
      if (t.coef != Coef(0.0)) out.truncated_ = true;
      continue;
    }
    if (t.coef == Coef(0.0) || std::abs(t.coef) < floor) continue;
    out.terms_.push_back(std::move(t));
  }
  return out;
}

LCNumber LCNumber::from_contributions(std::vector<Term> terms, std::vector<double> mass, Rational truncation) {
  std::vector<std::size_t> order(terms.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return terms[a].exponent < terms[b].exponent; });
  LCNumber out;
  out.truncation_ = std::move(truncation);
  std::size_t k = 0;
  while (k < order.size()) {
    Term t = std::move(terms[order[k]]);
    double m = mass[order[k]];
    for (++k; k < order.size() && terms[order[k]].exponent == t.exponent; ++k) {
      t.coef += terms[order[k]].coef;
      m += mass[order[k]];
    }
    if (t.exponent >= out.truncation_) {
      if (t.coef != Coef(0.0)) out.truncated_ = true;
      continue;
    }
    if (t.coef == Coef(0.0) || std::abs(t.coef) < kCleanupThreshold * m) continue;
    out.terms_.push_back(std::move(t));
  }
  return out;
}

LCNumber LCNumber::monomial(Coef coef, Rational exponent, Rational truncation) {
  return from_terms({{std::move(exponent), coef}}, std::move(truncation));
}

LCNumber LCNumber::rho(Rational truncation) { return monomial(1.0, Rational(1), std::move(truncation)); }

bool LCNumber::is_real() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coef.imag() == 0.0; });
}

Valuation LCNumber::valuation() const {
  if (terms_.empty()) return Valuation::infinity();
  return Valuation(terms_.front().exponent);
}

Rational LCNumber::effective_valuation() const {
  return terms_.empty() ? truncation_ : terms_.front().exponent;
}

Coef LCNumber::leading_coefficient() const { return terms_.empty() ? Coef(0.0) : terms_.front().coef; }

Coef LCNumber::coefficient_at(const Rational& exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, const Rational& e) { return t.exponent < e; });
  if (it != terms_.end() && it->exponent == exponent) return it->coef;
  return Coef(0.0);
}

double LCNumber::max_magnitude() const noexcept {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coef));
  return m;
}

LCNumber LCNumber::truncated_to(const Rational& order) const {
  if (order >= truncation_) return *this;
  LCNumber out;
  out.truncation_ = order;
  out.truncated_ = truncated_;
  for (const auto& t : terms_) {
    if (t.exponent < order) {
      out.terms_.push_back(t);
    } else {
      out.truncated_ = true;
    }
  }
  return out;
}

LCNumber LCNumber::shifted(const Rational& shift) const {
  LCNumber out = *this;
  for (auto& t : out.terms_) t.exponent += shift;
  out.truncation_ += shift;
  return out;
}

LCNumber LCNumber::scaled(Coef factor) const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.coef *= factor;
  return from_terms(std::move(terms), truncation_, -1.0);
}

LCNumber LCNumber::conj() const {
  LCNumber out = *this;
  for (auto& t : out.terms_) t.coef = std::conj(t.coef);
  return out;
}

LCNumber LCNumber::operator-() const {
  LCNumber out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

LCNumber& LCNumber::operator+=(const LCNumber& other) { return *this = arith(*this, other, ArithOp::add); }
LCNumber& LCNumber::operator-=(const LCNumber& other) { return *this = arith(*this, other, ArithOp::sub); }
LCNumber& LCNumber::operator*=(const LCNumber& other) { return *this = arith(*this, other, ArithOp::mul); }

LCNumber operator/(const LCNumber& a, const LCNumber& b) { return a * inverse(b); }

LCNumber arith(const LCNumber& a, const LCNumber& b, ArithOp op) {
  std::vector<Term> out;
  std::vector<double> mass;
  if (op == ArithOp::mul) {
    // a and b are known modulo rho^Ta and rho^Tb; the product is known modulo
    // rho^min(Ta + v(b), Tb + v(a)).
    Rational trunc = std::min(a.truncation_order() + b.effective_valuation(),
                              b.truncation_order() + a.effective_valuation());
    out.reserve(a.terms().size() * b.terms().size());
    mass.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms()) {
      for (const auto& tb : b.terms()) {
        Rational e = ta.exponent + tb.exponent;
        if (e >= trunc) break;  // b's exponents increase
        out.push_back({std::move(e), ta.coef * tb.coef});
        mass.push_back(std::abs(ta.coef) * std::abs(tb.coef));
      }
    }
    return LCNumber::from_contributions(std::move(out), std::move(mass), std::move(trunc));
  }
  Rational trunc = std::min(a.truncation_order(), b.truncation_order());
  const double sgn = op == ArithOp::sub ? -1.0 : 1.0;
  for (const auto& t : a.terms()) {
    out.push_back(t);
    mass.push_back(std::abs(t.coef));
  }
  for (const auto& t : b.terms()) {
    out.push_back({t.exponent, sgn * t.coef});
    mass.push_back(std::abs(t.coef));
  }
  return LCNumber::from_contributions(std::move(out), std::move(mass), std::move(trunc));
}

namespace {

// a = c rho^v (1 + u) with v(u) > 0.  Returns u, known modulo rho^(Ta - v).
LCNumber normalized_tail(const LCNumber& a) {
  const Rational v = a.valuation().value();
  const Coef c = a.leading_coefficient();
  LCNumber unit = a.shifted(-v).scaled(1.0 / c);
  return unit - LCNumber(1.0, unit.truncation_order());
}

// Exponents of the monoid generated by the (positive) exponents of u, below
// the truncation order, in increasing order. 0 comes first.
std::vector<Rational> exponent_lattice(const LCNumber& u) {
  const Rational& trunc = u.truncation_order();
  std::set<Rational> seen{Rational(0)};
  std::vector<Rational> frontier{Rational(0)};
  while (!frontier.empty()) {
    std::vector<Rational> next;
    for (const auto& e : frontier) {
      for (const auto& t : u.terms()) {
        Rational f = e + t.exponent;
        if (f < trunc && seen.insert(f).second) next.push_back(std::move(f));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// 1/(1 + u) by long division: b_0 = 1, b_e = -sum_t u_t b_(e - t). Each
// coefficient carries the mass of its own sum, so a product with (1 + u)
// cancels to rounding level and the cleanup removes the remainder.
LCNumber unit_inverse(const LCNumber& u) {
  const auto lattice = exponent_lattice(u);
  std::map<Rational, Coef> b;
  std::vector<Term> terms;
  std::vector<double> mass;
  for (const auto& e : lattice) {
    Coef v = e == 0 ? Coef(1.0) : Coef(0.0);
    double m = e == 0 ? 1.0 : 0.0;
    for (const auto& t : u.terms()) {
      if (t.exponent > e) break;
      const auto it = b.find(e - t.exponent);
      if (it == b.end()) continue;
      v -= t.coef * it->second;
      m += std::abs(t.coef) * std::abs(it->second);
    }
    b[e] = v;
    terms.push_back({e, v});
    mass.push_back(m);
  }
  return LCNumber::from_contributions(std::move(terms), std::move(mass), u.truncation_order());
}

// sqrt(1 + u) from s^2 = 1 + u: s_0 = 1, s_e = (u_e - sum s_f s_(e-f)) / 2
// over 0 < f < e.
LCNumber unit_sqrt(const LCNumber& u) {
  const auto lattice = exponent_lattice(u);
  std::map<Rational, Coef> s;
  std::vector<Term> terms;
  std::vector<double> mass;
  for (const auto& e : lattice) {
    if (e == 0) {
      s[e] = 1.0;
      terms.push_back({e, 1.0});
      mass.push_back(1.0);
      continue;
    }
    Coef v = u.coefficient_at(e);
    double m = std::abs(v);
    for (const auto& [f, sf] : s) {
      if (f == 0) continue;
      if (f >= e) break;
      const auto it = s.find(e - f);
      if (it == s.end()) continue;
      v -= sf * it->second;
      m += std::abs(sf) * std::abs(it->second);
    }
    v *= 0.5;
    s[e] = v;
    terms.push_back({e, v});
    mass.push_back(0.5 * m);
  }
  return LCNumber::from_contributions(std::move(terms), std::move(mass), u.truncation_order());
}

}  // namespace

LCNumber inverse(const LCNumber& a) {
  if (a.is_zero()) throw DivisionByZero("inverse of zero");
  const Rational v = a.valuation().value();
  const Coef c = a.leading_coefficient();
  return unit_inverse(normalized_tail(a)).scaled(1.0 / c).shifted(-v);
}

LCNumber sqrt_nonneg(const LCNumber& a) {
  if (a.is_zero()) return a;
  if (!a.is_real()) throw NotReal("sqrt_nonneg needs real coefficients");
  if (sign(a) < 0) throw NegativeOperand("sqrt_nonneg of a negative number: " + to_string(a));
  const Rational v = a.valuation().value();
  const double c = a.leading_coefficient().real();
  return unit_sqrt(normalized_tail(a)).scaled(std::sqrt(c)).shifted(v / 2);
}

LCNumber pow(const LCNumber& a, int exponent) {
  if (exponent < 0) return pow(inverse(a), -exponent);
  LCNumber result(1.0, a.truncation_order() - std::min(Rational(0), a.effective_valuation()) * exponent);
  LCNumber base = a;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

double ultra_norm(const LCNumber& a) {
  if (a.is_zero()) return 0.0;
  return std::exp(-to_double(a.valuation().value()));
}

double ultra_metric(const LCNumber& a, const LCNumber& b) { return ultra_norm(a - b); }

int sign(const LCNumber& a) {
  if (!a.is_real()) throw NotReal("sign needs real coefficients");
  if (a.is_zero()) return 0;
  return a.leading_coefficient().real() > 0 ? 1 : -1;
}

int compare(const LCNumber& a, const LCNumber& b) { return sign(a - b); }

LCNumber abs(const LCNumber& a) { return sign(a) < 0 ? -a : a; }

Magnitude classify(const LCNumber& a) {
  const Valuation v = a.valuation();
  if (v > Valuation(Rational(0))) return Magnitude::infinitesimal;
  if (v == Valuation(Rational(0))) return Magnitude::finite;
  return Magnitude::infinitely_large;
}

const char* to_string(Magnitude m) {
  switch (m) {
    case Magnitude::infinitesimal: return "infinitesimal";
    case Magnitude::finite: return "finite";
    case Magnitude::infinitely_large: return "infinitely_large";
  }
  return "?";
}

Coef standard_part(const LCNumber& a) {
  if (classify(a) == Magnitude::infinitely_large) {
    throw NotFinite("standard part of an infinitely large number: " + to_string(a));
  }
  return a.coefficient_at(Rational(0));
}

namespace {

std::string format_real(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_coef(Coef c, int digits, bool& negative) {
  negative = false;
  if (c.imag() == 0.0) {
    negative = c.real() < 0;
    return format_real(std::abs(c.real()), digits);
  }
  if (c.real() == 0.0) {
    negative = c.imag() < 0;
    return format_real(std::abs(c.imag()), digits) + "i";
  }
  std::string im = format_real(std::abs(c.imag()), digits);
  return "(" + format_real(c.real(), digits) + (c.imag() < 0 ? "-" : "+") + im + "i)";
}

std::string rho_power(const Rational& e) {
  if (e == 1) return "rho";
  std::string s = asymptotica::to_string(e);
  if (denominator_of(e) != 1 || e < 0) s = "(" + s + ")";
  return "rho^" + s;
}

}  // namespace

std::string to_string(const LCNumber& a, int digits) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms()) {
    bool negative = false;
    std::string coef = format_coef(t.coef, digits, negative);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (t.exponent == 0) {
      os << coef;
    } else {
      if (coef != "1") os << coef << "*";
      os << rho_power(t.exponent);
    }
  }
  if (first) os << "0";
  os << " + O(" << rho_power(a.truncation_order()) << ")";
  return os.str();
}

}  // namespace asymptotica::lc
