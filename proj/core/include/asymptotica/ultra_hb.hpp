#pragma once

#include "asymptotica/lc_number.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Hahn-Banach extension on finite-dimensional spaces over the LC field with a
// diagonal ultra-norm  ||x|| = max_i |x_i|_v w_i.  Weights are stored as
// log-weights, w_i = exp(-lambda_i) with lambda_i rational, so every norm is
// exp(-q) for a rational q (its "norm valuation") and all comparisons are
// exact comparisons of rationals.
namespace asymptotica::hb {

using Vector = std::vector<lc::LCNumber>;

struct DiagonalSpace {
  std::vector<Rational> log_weights;

  int dim() const { return static_cast<int>(log_weights.size()); }
  double weight(int i) const;
  // lambda_i = -ln w_i, rounded to a rational (exact for w_i = 1).
  static DiagonalSpace from_weights(const std::vector<double>& weights);
};

// min_i (v(x_i) + lambda_i); infinite for x = 0.
lc::Valuation norm_valuation(const DiagonalSpace& V, const Vector& x);
double norm(const DiagonalSpace& V, const Vector& x);

struct UltraFunctional {
  DiagonalSpace space;
  std::vector<int> domain;  // basis indices spanning U, ascending
  Vector values;            // T(e_i) for i in domain, same order

  // min over the domain of v(T(e_i)) - lambda_i; ||T|| = exp(-that).
  lc::Valuation norm_valuation() const;
  double norm() const;
  // T(x) = sum over the domain of x_i T(e_i). x has dim() coordinates;
  // coordinates outside the domain must be zero (DomainMismatch otherwise).
  lc::LCNumber apply(const Vector& x) const;
  // Restriction to a subset of the domain.
  UltraFunctional restrict_to(const std::vector<int>& indices) const;
  bool on_whole_space() const { return static_cast<int>(domain.size()) == space.dim(); }
};

// Throws DomainMismatch on malformed input (sizes, duplicate or out-of-range
// indices, non-positive weights).
UltraFunctional make_functional(DiagonalSpace V, std::vector<int> domain, Vector values);

double functional_norm(const UltraFunctional& T);

// Extends T from U to U + span(e_j). The value y0 = S(e_j) is the first
// palette candidate that passes verification:
//   T(x) for x in U with coefficients in {0, +-1, +-rho, +-rho^-1} on the
//   domain (x = 0 gives y0 = 0), ordered by increasing R(x) = ||T|| ||x - e_j||;
//   then T(e_i) rho^(lambda_j - lambda_i).
// A candidate must satisfy |y0 - T(x)|_v <= R(x) on the whole combinatorial
// set and on `probes` random vectors of U, and keep ||S|| = ||T|| exactly.
// Throws NoCandidate if nothing passes.
struct ExtendOptions {
  int probes = 64;
  std::uint64_t seed = 42;
};
UltraFunctional extend_one_step(const UltraFunctional& T, int j, const ExtendOptions& opts = {});
UltraFunctional extend_full(const UltraFunctional& T, const ExtendOptions& opts = {});

struct CheckEntry {
  std::string name;
  bool passed;
  std::string detail;
};
struct ExtensionReport {
  std::vector<CheckEntry> entries;
  bool passed() const;
};
// Exact agreement on U, exact norm equality, and |M(x)|_v <= ||T|| ||x|| on
// `samples` random vectors of V.
ExtensionReport verify_extension(const UltraFunctional& T, const UltraFunctional& M, int samples,
                                 std::uint64_t seed = 42);

// Closed balls {y : v(y - c) >= r} in the valuation picture (radius exp(-r)).
enum class BallRelation { nested, disjoint };
BallRelation ball_relation(const lc::LCNumber& c1, const lc::Valuation& r1, const lc::LCNumber& c2,
                           const lc::Valuation& r2);
bool in_ball(const lc::LCNumber& y, const lc::LCNumber& c, const lc::Valuation& r);

// Random data for sweeps: numbers with 1 to 3 terms, exponents p/q with
// q <= 3 and valuation in [vmin, vmax], real or complex coefficients.
lc::LCNumber random_lc(std::mt19937_64& rng, int vmin, int vmax);
Vector random_vector(std::mt19937_64& rng, int dim, int vmin, int vmax, double zero_probability = 0.2);
// Space of dimension k, log-weights in {-1, -1/2, 0, 1/2, 1}, a random
// non-empty domain and random values.
UltraFunctional random_functional(std::uint64_t seed, int k);

}  // namespace asymptotica::hb
