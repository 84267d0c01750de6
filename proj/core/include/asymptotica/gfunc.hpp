#pragma once

#include "asymptotica/rational.hpp"
#include "asymptotica/symexpr.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

// Asymptotic functions in one dimension. A GenFunction is kept expanded as a
// sum of rational multiples of products of factors; every factor is an
// embedded primitive, possibly precomposed with a diffeomorphism. Products and
// derivatives are expanded on construction, so Leibniz and chain rules hold
// structurally and two expressions are equal iff their expansions match.
namespace asymptotica::gfunc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// An open interval; infinite ends give the whole line.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool operator==(const Interval&) const = default;
  bool full() const { return lo == -kInf && hi == kInf; }
  bool contains(double x) const { return lo < x && x < hi; }
};

// A strictly monotone smooth map x -> map(x) on its domain.
struct Diffeo {
  sym::Expr map;
  sym::Expr dmap;  // derivative of map
  Interval domain;

  double operator()(double x) const;
  double derivative(double x) const;
  bool increasing() const;
  // Numeric inverse on the domain (bisection); nullopt when y is outside
  // the image.
  std::optional<double> inverse(double y) const;
  Interval image() const;
  std::string to_string() const;
};
// Throws DomainMismatch unless the map is strictly monotone on the domain
// (checked by sampling the derivative).
Diffeo make_diffeo(const sym::Expr& map, Interval domain = {});

enum class LeafKind {
  point,   // order -1: H(x - c);  order k >= 0: delta_c^(k)
  smooth,  // f (*) phi, f smooth; derivatives go to f
  kernel,  // f (*) phi^(order), f locally integrable
  fn,      // f itself, the constant net sigma(f)
  cutoff,  // C_{box,phi}^(order)
};

struct Leaf {
  LeafKind kind = LeafKind::fn;
  Rational center{0};
  int order = 0;
  sym::Expr f;
  Interval box;  // cutoff box, or the domain a kernel is cut off to
};

struct Factor {
  Leaf leaf;
  std::optional<Diffeo> psi;
  int power = 1;
};

struct Monomial {
  Rational coef{1};
  std::vector<Factor> factors;  // sorted by key, distinct keys
};

class GenFunction {
 public:
  GenFunction() = default;
  GenFunction(std::vector<Monomial> terms, Interval domain);

  const std::vector<Monomial>& terms() const { return terms_; }
  const Interval& domain() const { return domain_; }
  bool is_zero() const { return terms_.empty(); }
  std::string to_string() const;

 private:
  std::vector<Monomial> terms_;
  Interval domain_;
};

std::string leaf_key(const Leaf& leaf);
std::string factor_key(const Factor& f);  // without the power

// Catalog of embeddings.
GenFunction heaviside(const Rational& c = Rational(0));
GenFunction delta(const Rational& c = Rational(0), int order = 0);
GenFunction embed_smooth(const sym::Expr& f);
// Regular kernel; on a proper box the integrand is cut off by C_{box,phi},
// on the whole line by the ball |t| < 1/R_phi.
GenFunction embed_kernel(const sym::Expr& f, Interval domain = {});
GenFunction sigma(const sym::Expr& f);
GenFunction constant(const Rational& q);
GenFunction cutoff(Interval box);

GenFunction operator+(const GenFunction& a, const GenFunction& b);
GenFunction operator-(const GenFunction& a, const GenFunction& b);
GenFunction operator-(const GenFunction& a);
GenFunction operator*(const GenFunction& a, const GenFunction& b);
GenFunction operator*(const Rational& q, const GenFunction& a);
GenFunction pow(const GenFunction& a, int k);
GenFunction derive(const GenFunction& a, int order = 1);
GenFunction restrict_to(const GenFunction& a, Interval domain);

// Net composition g_phi o psi.
GenFunction compose_diffeo(const GenFunction& g, const Diffeo& psi);
// E(T o psi) for a distribution T built from catalog leaves: the pullback is
// taken before embedding. delta_c o psi = delta_{x0}/|psi'(x0)| with
// psi(x0) = c. Higher delta derivatives are not supported.
GenFunction pullback(const GenFunction& t, const Diffeo& psi);
// E(f T) for smooth f and a distribution T (a sum of single-leaf terms):
// f delta_c^(k) expands by the Leibniz rule, f H becomes a regular kernel.
GenFunction embed_product(const sym::Expr& f, const GenFunction& t);

bool structurally_equal(const GenFunction& a, const GenFunction& b);

// Mini-language:
//   leaves   H, H(c), delta, delta(c), ddelta, ddelta(c),
//            smooth(f), fn(f), kernel(f), cutoff(a, b), rational numbers
//   infix    + - * and ^ with a non-negative integer exponent
//   calls    add(g, ...), sub(g, h), mul(g, ...), neg(g), scale(q, g),
//            derive(g), derive(g, k), pow(g, k),
//            compose(g, psi), compose(g, psi, lo, hi), pullback(T, psi),
//            fmul(f, T) for E(f T)
// f and psi are formulas in x (see symexpr.hpp).
GenFunction parse(std::string_view text);

}  // namespace asymptotica::gfunc
