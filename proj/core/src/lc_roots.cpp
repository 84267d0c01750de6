#include "asymptotica/lc_roots.hpp"

#include "asymptotica/errors.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <optional>

namespace asymptotica::lc {

LCNumber evaluate_polynomial(std::span<const LCNumber> coeffs, const LCNumber& x) {
  if (coeffs.empty()) return LCNumber();
  LCNumber r = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) r = r * x + coeffs[i];
  return r;
}

std::vector<LCNumber> derivative_coefficients(std::span<const LCNumber> coeffs) {
  std::vector<LCNumber> out;
  for (std::size_t i = 1; i < coeffs.size(); ++i) out.push_back(coeffs[i].scaled(static_cast<double>(i)));
  if (out.empty()) out.emplace_back();
  return out;
}

std::vector<NewtonSegment> newton_polygon(std::span<const LCNumber> coeffs) {
  struct Point {
    int i;
    Rational v;
  };
  std::vector<Point> pts;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) pts.push_back({static_cast<int>(i), coeffs[i].valuation().value()});
  }
  // Lower hull, monotone chain. cross <= 0 removes non-convex and collinear points.
  std::vector<Point> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      Rational cross = Rational(b.i - a.i) * (p.v - a.v) - (b.v - a.v) * Rational(p.i - a.i);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::vector<NewtonSegment> segs;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    segs.push_back({hull[k - 1].i, hull[k].i, (hull[k].v - hull[k - 1].v) / Rational(hull[k].i - hull[k - 1].i)});
  }
  return segs;
}

namespace {

using CVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>;

Coef eval_complex(const std::vector<Coef>& q, Coef a) {
  Coef r = 0.0;
  for (std::size_t i = q.size(); i-- > 0;) r = r * a + q[i];
  return r;
}

Coef eval_complex_derivative(const std::vector<Coef>& q, Coef a) {
  Coef r = 0.0;
  for (std::size_t i = q.size(); i-- > 1;) r = r * a + q[i] * static_cast<double>(i);
  return r;
}

// Roots of a complex polynomial with nonzero constant term, grouped into
// clusters (center, multiplicity).
std::vector<std::pair<Coef, int>> clustered_roots(const std::vector<Coef>& q) {
  const int deg = static_cast<int>(q.size()) - 1;
  std::vector<Coef> roots;
  if (deg == 1) {
    roots.push_back(-q[0] / q[1]);
  } else {
    CVec c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = q[i];
    Eigen::PolynomialSolver<std::complex<double>, Eigen::Dynamic> solver;
    solver.compute(c);
    for (int i = 0; i < deg; ++i) roots.push_back(solver.roots()[i]);
  }
  std::vector<std::pair<Coef, int>> clusters;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Coef sum = roots[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= kClusterTolerance * std::max(1.0, std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    Coef center = sum / static_cast<double>(count);
    if (count == 1) {
      for (int it = 0; it < 4; ++it) {
        Coef d = eval_complex_derivative(q, center);
        if (d == Coef(0.0)) break;
        center -= eval_complex(q, center) / d;
      }
    }
    clusters.emplace_back(center, count);
  }
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  return clusters;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// Every term of the correction is rounding-level relative to the term of x
// at the same exponent.
bool negligible_step(const LCNumber& step, const LCNumber& x) {
  for (const auto& t : step.terms()) {
    if (std::abs(t.coef) > 1e3 * kCleanupThreshold * std::abs(x.coefficient_at(t.exponent))) return false;
  }
  return true;
}

LCNumber newton_refine(std::span<const LCNumber> p, const Rational& mu, Coef a, const Rational& slope) {
  std::vector<LCNumber> dp = derivative_coefficients(p);
  // Precision of the root: perturbing c_i by rho^T_i moves the root by
  // rho^(T_i + i mu) / P'(root).
  std::optional<Rational> data_order;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational t = p[i].truncation_order() + mu * static_cast<int>(i);
    if (!data_order || t < *data_order) data_order = t;
  }
  LCNumber x = LCNumber::monomial(a, mu, *data_order + Rational(64));
  LCNumber dpx = evaluate_polynomial(dp, x);
  if (dpx.is_zero()) throw Unresolvable("vanishing derivative on Newton-polygon slope " + asymptotica::to_string(slope));
  const Rational root_order = *data_order - dpx.valuation().value();
  if (root_order <= mu) {
    throw Unresolvable("coefficients too truncated to resolve a root on slope " + asymptotica::to_string(slope));
  }
  x = x.truncated_to(root_order);
  std::optional<Rational> last_step_valuation;
  for (int iter = 0; iter < 64; ++iter) {
    LCNumber r = evaluate_polynomial(p, x);
    if (r.is_zero()) return x;
    LCNumber d = evaluate_polynomial(dp, x);
    if (d.is_zero()) break;
    LCNumber step = (r / d).truncated_to(root_order);
    if (step.is_zero() || negligible_step(step, x)) return x;
    // Exact Newton steps gain valuation every iteration; once they stop, the
    // remaining correction is rounding noise.
    const Rational sv = step.valuation().value();
    if (last_step_valuation && sv <= *last_step_valuation) {
      // The precision claimed near the truncation order is not attainable in
      // double coefficients: keep x below the first significant correction.
      double lower = 0.0;
      for (const auto& t : step.terms()) {
        for (const auto& u : x.terms()) {
          if (u.exponent < t.exponent) lower = std::max(lower, std::abs(u.coef));
        }
        if (std::abs(t.coef) > 1e-9 * std::max(lower, 1.0)) {
          if (t.exponent <= mu) break;
          return x.truncated_to(t.exponent);
        }
      }
      if (step.max_magnitude() <= 1e-9 * std::max(x.max_magnitude(), 1.0)) return x;
      break;
    }
    last_step_valuation = sv;
    x = (x - step).truncated_to(root_order);
  }
  throw Unresolvable("Newton iteration did not converge on Newton-polygon slope " + asymptotica::to_string(slope));
}

// Roots of p (not necessarily monic). When min_valuation is set only roots of
// strictly larger valuation are returned.
std::vector<LCNumber> solve(std::vector<LCNumber> p, const std::optional<Rational>& min_valuation, int depth) {
  if (depth > 48) throw Unresolvable("root cluster did not separate before the truncation order");
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  std::vector<LCNumber> roots;
  if (p.size() <= 1) return roots;

  std::size_t zeros = 0;
  while (p[zeros].is_zero()) ++zeros;
  if (zeros > 0) {
    // The vanishing low coefficients are only known modulo rho^T_i, so these
    // roots are zero up to min_i (T_i - v(c_zeros)) / (zeros - i).
    std::optional<Rational> order;
    const Rational v_low = p[zeros].valuation().value();
    for (std::size_t i = 0; i < zeros; ++i) {
      Rational t = (p[i].truncation_order() - v_low) / Rational(static_cast<long long>(zeros - i));
      if (!order || t < *order) order = t;
    }
    for (std::size_t k = 0; k < zeros; ++k) roots.emplace_back(0.0, *order);
  }
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));

  for (const auto& seg : newton_polygon(p)) {
    const Rational mu = -seg.slope;
    if (min_valuation && mu <= *min_valuation) continue;
    std::vector<Coef> q(static_cast<std::size_t>(seg.end - seg.start + 1), Coef(0.0));
    for (int i = seg.start; i <= seg.end; ++i) {
      const auto& c = p[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (c.valuation().value() == p[static_cast<std::size_t>(seg.start)].valuation().value() + seg.slope * (i - seg.start)) {
        q[static_cast<std::size_t>(i - seg.start)] = c.leading_coefficient();
      }
    }
    for (const auto& [a, mult] : clustered_roots(q)) {
      if (mult == 1) {
        roots.push_back(newton_refine(p, mu, a, seg.slope));
        continue;
      }
      // Q(y) = P(rho^mu (a + y)) = sum_j y^j sum_{i>=j} binom(i,j) a^(i-j) rho^(mu i) c_i
      const int deg = static_cast<int>(p.size()) - 1;
      std::vector<LCNumber> shifted_p;
      for (int i = 0; i <= deg; ++i) shifted_p.push_back(p[static_cast<std::size_t>(i)].shifted(mu * i));
      std::vector<LCNumber> qy;
      for (int j = 0; j <= deg; ++j) {
        LCNumber acc(0.0, shifted_p[static_cast<std::size_t>(j)].truncation_order());
        for (int i = j; i <= deg; ++i) {
          acc += shifted_p[static_cast<std::size_t>(i)].scaled(binomial(i, j) * std::pow(a, i - j));
        }
        qy.push_back(acc);
      }
      std::vector<LCNumber> ys = solve(qy, Rational(0), depth + 1);
      if (static_cast<int>(ys.size()) != mult) {
        throw Unresolvable("cluster of " + std::to_string(mult) + " roots on slope " + asymptotica::to_string(seg.slope) +
                           " resolved into " + std::to_string(ys.size()));
      }
      for (const auto& y : ys) roots.push_back((LCNumber(a, y.truncation_order() + Rational(64)) + y).shifted(mu));
    }
  }
  return roots;
}

}  // namespace

std::vector<LCNumber> poly_roots(std::span<const LCNumber> coeffs) {
  std::vector<LCNumber> p(coeffs.begin(), coeffs.end());
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  if (p.size() < 2) throw Unresolvable("poly_roots needs a polynomial of degree >= 1");
  const LCNumber lead_inv = inverse(p.back());
  for (auto& c : p) c = c * lead_inv;
  p.back() = LCNumber(1.0, p.back().truncation_order());
  const std::size_t degree = p.size() - 1;
  std::vector<LCNumber> roots = solve(std::move(p), std::nullopt, 0);
  if (roots.size() != degree) {
    throw Unresolvable("found " + std::to_string(roots.size()) + " roots for a polynomial of degree " +
                       std::to_string(degree));
  }
  return roots;
}

}  // namespace asymptotica::lc
