#pragma once

#include "asymptotica/rational.hpp"
#include "real.hpp"

#include <boost/math/constants/constants.hpp>

#include <mutex>
#include <vector>

// phi0(x) = exp(-1/(1-x^2)) / c on (-1, 1), its derivatives and its
// antiderivative, templated on the working precision.
namespace asymptotica::detail {

inline constexpr int kMaxBumpDerivative = 24;

// d^k/dx^k exp(-1/(1-x^2)) = P_k(x) (1-x^2)^(-2k) exp(-1/(1-x^2)) with
//   P_{k+1} = P_k' (1-x^2)^2 + 4k x (1-x^2) P_k - 2x P_k,  P_0 = 1.
// Coefficients are integers; index j multiplies x^j.
const std::vector<std::vector<BigInt>>& bump_derivative_polynomials();

template <class R>
struct ChebyshevPiece {
  R a, b;                  // interval
  R base;                  // integral of exp(-1/(1-x^2)) over [-1, a]
  std::vector<R> coeffs;   // antiderivative on [a, b], zero at a, in T_k of the mapped variable
};

template <class R>
struct BumpTables {
  R c;                                      // integral of exp(-1/(1-x^2)) over [-1, 1]
  R log_c;
  R cutoff;                                 // below this, the antiderivative is zero to working precision
  std::vector<ChebyshevPiece<R>> pieces;    // cover [cutoff, 0]
  std::vector<std::vector<R>> polys;        // P_k as R
};

template <class R>
R clenshaw(const std::vector<R>& a, const R& t) {
  R b1 = 0, b2 = 0;
  for (std::size_t k = a.size(); k-- > 1;) {
    R b0 = 2 * t * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + a[0];
}

template <class R>
R unnormalized_bump(const R& x) {
  using std::exp;
  R u = 1 - x * x;
  if (u <= 0) return R(0);
  return exp(-1 / u);
}

// Chebyshev fit of exp(-1/(1-x^2)) on [a, b], integrated term by term.
template <class R>
ChebyshevPiece<R> fit_piece(const R& a, const R& b, int n, const R& base) {
  using std::cos;
  const R pi = boost::math::constants::pi<R>();
  std::vector<R> t(n), f(n);
  for (int i = 0; i < n; ++i) {
    t[i] = cos(pi * (R(i) + R(0.5)) / R(n));
    f[i] = unnormalized_bump((a + b) / 2 + (b - a) / 2 * t[i]);
  }
  // a_k = 2/n sum_i f_i T_k(t_i), with f = a_0/2 + sum_{k>=1} a_k T_k.
  std::vector<R> coef(n + 1, R(0));
  std::vector<R> tkm1(n, R(1)), tk = t;
  for (int i = 0; i < n; ++i) coef[0] += f[i];
  for (int i = 0; i < n; ++i) coef[1] += f[i] * t[i];
  for (int k = 2; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      R next = 2 * t[i] * tk[i] - tkm1[i];
      tkm1[i] = tk[i];
      tk[i] = next;
      coef[k] += f[i] * next;
    }
  }
  for (int k = 0; k < n; ++k) coef[k] *= R(2) / R(n);
  // Antiderivative in the mapped variable: b_k = (a_{k-1} - a_{k+1}) / (2k).
  std::vector<R> anti(n + 1, R(0));
  for (int k = 1; k <= n; ++k) {
    R prev = coef[k - 1];
    R next = k + 1 < n ? coef[k + 1] : R(0);
    anti[k] = (prev - next) / (2 * k);
  }
  const R half = (b - a) / 2;
  for (auto& v : anti) v *= half;
  // Zero at the left end: T_k(-1) = (-1)^k.
  R at_left = 0;
  for (int k = 1; k <= n; ++k) at_left += (k % 2 ? -anti[k] : anti[k]);
  anti[0] = -at_left;
  return {a, b, base, std::move(anti)};
}

template <class R>
BumpTables<R> build_bump_tables() {
  BumpTables<R> tab;
  using std::ldexp;
  using std::log;
  const int digits = digits10_of<R>();
  // exp(-1/(1-x^2)) < 10^-(digits+12) once 1 + x < 2^-levels.
  int levels = 1;
  while (std::ldexp(1.0, levels - 1) < (digits + 12) * 2.302585092994046) ++levels;
  const int subdivisions = 4;
  const int nodes = std::is_same_v<R, double> ? 40 : 90;
  std::vector<std::pair<R, R>> intervals;
  for (int j = levels; j-- > 0;) {
    R hi = R(-1) + ldexp(R(1), -j);
    R lo = R(-1) + ldexp(R(1), -(j + 1));
    for (int s = 0; s < subdivisions; ++s) {
      intervals.emplace_back(lo + (hi - lo) * R(s) / R(subdivisions), lo + (hi - lo) * R(s + 1) / R(subdivisions));
    }
  }
  tab.cutoff = intervals.front().first;
  R base = 0;
  for (const auto& [a, b] : intervals) {
    tab.pieces.push_back(fit_piece(a, b, nodes, base));
    base += clenshaw(tab.pieces.back().coeffs, R(1));
  }
  tab.c = 2 * base;
  tab.log_c = log(tab.c);
  for (const auto& p : bump_derivative_polynomials()) {
    std::vector<R> q;
    for (const auto& v : p) q.push_back(from_string<R>(v.str()));
    tab.polys.push_back(std::move(q));
  }
  return tab;
}

template <class R>
const BumpTables<R>& bump_tables() {
  static const BumpTables<R> tables = build_bump_tables<R>();
  return tables;
}

// phi0(x), normalized to unit mass.
template <class R>
R bump0(const R& x) {
  using std::exp;
  R u = 1 - x * x;
  if (u <= 0) return R(0);
  return exp(-1 / u - bump_tables<R>().log_c);
}

// phi0^(k)(x).
template <class R>
R bump0_derivative(const R& x, int k) {
  if (k == 0) return bump0(x);
  using std::exp;
  using std::log;
  R u = 1 - x * x;
  if (u <= 0) return R(0);
  const auto& tab = bump_tables<R>();
  const auto& p = tab.polys.at(static_cast<std::size_t>(k));
  R poly = 0;
  for (std::size_t j = p.size(); j-- > 0;) poly = poly * x + p[j];
  return poly * exp(-1 / u - 2 * k * log(u) - tab.log_c);
}

// Integral of phi0 over (-inf, x].
template <class R>
R bump0_antiderivative(const R& x) {
  if (x <= -1) return R(0);
  if (x >= 1) return R(1);
  if (x > 0) return 1 - bump0_antiderivative<R>(-x);
  const auto& tab = bump_tables<R>();
  if (x <= tab.cutoff) return R(0);
  auto it = std::upper_bound(tab.pieces.begin(), tab.pieces.end(), x,
                             [](const R& v, const ChebyshevPiece<R>& p) { return v < p.b; });
  if (it == tab.pieces.end()) --it;
  const R t = (2 * x - it->a - it->b) / (it->b - it->a);
  return (it->base + clenshaw(it->coeffs, t)) / tab.c;
}

}  // namespace asymptotica::detail
