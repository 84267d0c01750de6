#pragma once

#include "asymptotica/errors.hpp"
#include "real.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

// Global adaptive Gauss-Kronrod with an absolute tolerance, explicit
// breakpoints and a cell budget. Boost supplies the node tables only: its own
// driver recurses on a relative tolerance, which never terminates on the
// exactly-zero tails of compactly supported integrands.
namespace asymptotica::detail {

template <class R>
struct KronrodRule {
  std::vector<R> x;   // nodes in [-1, 1]
  std::vector<R> wk;  // Kronrod weights
  std::vector<R> wg;  // embedded Gauss weights (0 at Kronrod-only nodes)
};

template <class R, unsigned N>
KronrodRule<R> make_rule() {
  using GK = boost::math::quadrature::gauss_kronrod<R, N>;
  using G = boost::math::quadrature::gauss<R, (N - 1) / 2>;
  const auto& ax = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  constexpr unsigned gauss_order = (N - 1) / 2;
  KronrodRule<R> r;
  // Kronrod nodes: index 0 is the origin; in the Boost layout the Gauss nodes
  // sit at even indices when the Gauss order is odd, at odd indices otherwise.
  const unsigned gauss_parity = (gauss_order & 1) ? 0 : 1;
  for (unsigned i = 0; i < ax.size(); ++i) {
    const bool is_gauss = (i % 2) == gauss_parity;
    R g = is_gauss ? R(wg[i / 2]) : R(0);
    if (i == 0) {
      r.x.push_back(R(0));
      r.wk.push_back(wk[0]);
      r.wg.push_back(is_gauss ? R(wg[0]) : R(0));
      continue;
    }
    for (int s : {-1, 1}) {
      r.x.push_back(s * R(ax[i]));
      r.wk.push_back(wk[i]);
      r.wg.push_back(g);
    }
  }
  return r;
}

template <class R>
const KronrodRule<R>& kronrod_rule() {
  if constexpr (std::is_same_v<R, double>) {
    static const KronrodRule<double> rule = make_rule<double, 31>();
    return rule;
  } else {
    static const KronrodRule<R> rule = make_rule<R, 61>();
    return rule;
  }
}

template <class R>
struct Cell {
  R a, b, value, error;
  bool operator<(const Cell& o) const { return error < o.error; }
};

template <class R, class F>
Cell<R> kronrod_cell(F& f, const R& a, const R& b) {
  const auto& rule = kronrod_rule<R>();
  const R half = (b - a) / 2;
  const R mid = (a + b) / 2;
  R k = 0, g = 0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const R y = f(mid + half * rule.x[i]);
    k += rule.wk[i] * y;
    g += rule.wg[i] * y;
  }
  k *= half;
  g *= half;
  using std::abs;
  return {a, b, k, abs(k - g)};
}

struct QuadratureLimits {
  int max_cells = 20000;
  // Also stop once the error estimate is below rel_tol * |integral|.
  double rel_tol = 0;
};

// Integrates f over [points.front(), points.back()], starting from one cell
// per breakpoint interval.
template <class R, class F>
R integrate(F&& f, std::vector<R> points, const R& abs_tol, QuadratureLimits limits = {}) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::priority_queue<Cell<R>> open;
  std::vector<Cell<R>> done;
  R total_error = 0;
  R total_value = 0;
  int cells = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Cell<R> c = kronrod_cell(f, points[i - 1], points[i]);
    total_error += c.error;
    total_value += c.value;
    open.push(std::move(c));
    ++cells;
  }
  using std::abs;
  const R resolution = std::numeric_limits<R>::epsilon() * 64;
  const R rel_tol = R(limits.rel_tol);
  auto unmet = [&] { return total_error > abs_tol && total_error > rel_tol * abs(total_value); };
  while (!open.empty() && unmet()) {
    Cell<R> worst = open.top();
    open.pop();
    total_error -= worst.error;
    total_value -= worst.value;
    const R mid = (worst.a + worst.b) / 2;
    if (worst.b - worst.a <= resolution * (abs(worst.a) + abs(worst.b))) {
      // Cannot be split further in this precision.
      total_value += worst.value;
      done.push_back(std::move(worst));
      continue;
    }
    Cell<R> left = kronrod_cell(f, worst.a, mid);
    Cell<R> right = kronrod_cell(f, mid, worst.b);
    total_error += left.error + right.error;
    total_value += left.value + right.value;
    open.push(std::move(left));
    open.push(std::move(right));
    cells += 2;
    if (cells > limits.max_cells) {
      throw QuadratureFailure("tolerance " + std::to_string(to_double(abs_tol)) + " not met within " +
                              std::to_string(limits.max_cells) + " cells (error estimate " +
                              std::to_string(to_double(total_error)) + ")");
    }
    // Guard against drift in the running error sum.
    if (total_error < 0) total_error = 0;
  }
  R sum = 0;
  for (const auto& c : done) sum += c.value;
  while (!open.empty()) {
    sum += open.top().value;
    open.pop();
  }
  return sum;
}

}  // namespace asymptotica::detail
