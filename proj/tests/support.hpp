#pragma once

// Random data and closed-form oracles shared by the tests. Kept independent
// of the library's own generators.

#include "asymptotica/lc_number.hpp"

#include <cmath>
#include <random>
#include <set>

namespace asymptotica::testing {

// 1 to `max_terms` terms, exponents p/q with q in {1, 2, 3} and leading
// exponent in [vmin, vmax], coefficients with |re| >= 0.1.
inline lc::LCNumber random_number(std::mt19937_64& rng, int vmin, int vmax, int max_terms = 3,
                                  bool complex_coefs = true) {
  std::uniform_int_distribution<int> den(1, 3), count(1, max_terms), step(1, 5);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::bernoulli_distribution imag(complex_coefs ? 0.3 : 0.0);
  const int q = den(rng);
  const int lead = std::uniform_int_distribution<int>(vmin * q, vmax * q)(rng);
  std::set<Rational> exps{Rational(lead, q)};
  const int k = count(rng);
  while (static_cast<int>(exps.size()) < k) exps.insert(*exps.rbegin() + Rational(step(rng), q));
  std::vector<lc::Term> terms;
  for (const auto& e : exps) {
    double re = c(rng);
    if (std::abs(re) < 0.1) re = re < 0 ? -0.5 : 0.5;
    terms.push_back({e, {re, imag(rng) ? c(rng) : 0.0}});
  }
  return lc::LCNumber::from_terms(std::move(terms), lc::default_truncation());
}

// The default catalog test function bump(x - 1/5) = exp(-1/(1 - u^2)), u = x - 1/5.
inline double tau_bump(double x) {
  const double u = x - 0.2;
  return std::abs(u) < 1 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
}
inline double tau_bump_prime(double x) {
  const double u = x - 0.2;
  return tau_bump(x) * (-2.0 * u / ((1.0 - u * u) * (1.0 - u * u)));
}

}  // namespace asymptotica::testing
