#pragma once

// Net evaluation and pairing quadrature for GenFunction, templated on the
// working real type. Private to the core library.

#include "asymptotica/errors.hpp"
#include "asymptotica/gfunc.hpp"
#include "asymptotica/mollifier.hpp"
#include "asymptotica/pairing.hpp"
#include "bump_impl.hpp"
#include "quadrature.hpp"
#include "real.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace asymptotica::detail {

using gfunc::Factor;
using gfunc::GenFunction;
using gfunc::Interval;
using gfunc::LeafKind;
using gfunc::Monomial;

// The level-n mollifier at scale eps: phi(z) = sum_j c_j/eps phi0(s_j z/eps).
template <class R>
struct NetScale {
  R eps;
  double eps_d;
  std::vector<R> c, s;
  std::vector<double> s_d;
  int n;
};

inline const mollifier::AxisSum& level_profile(int n) {
  static std::vector<mollifier::AxisSum> cache = [] {
    std::vector<mollifier::AxisSum> v;
    v.push_back(mollifier::base_bump().flat.at(0).axes.at(0));
    for (int k = 1; k <= 8; ++k) v.push_back(mollifier::moment_killer(k, Rational(9 * k)).flat.at(0).axes.at(0));
    return v;
  }();
  if (n < 0 || n >= static_cast<int>(cache.size())) throw LevelTooDeep("gfunc levels run from 0 to 8");
  return cache[static_cast<std::size_t>(n)];
}

template <class R>
NetScale<R> make_scale(int n, const Rational& eps) {
  if (eps <= 0) throw DomainMismatch("scale must be positive");
  NetScale<R> sc;
  sc.eps = from_rational<R>(eps);
  sc.eps_d = asymptotica::to_double(eps);
  sc.n = n;
  for (const auto& t : level_profile(n)) {
    sc.c.push_back(from_rational<R>(t.c));
    sc.s.push_back(from_rational<R>(t.s));
    sc.s_d.push_back(asymptotica::to_double(t.s));
  }
  return sc;
}

// phi^(k)(z)
template <class R>
R phi_derivative(const NetScale<R>& sc, const R& z, int k) {
  R total = 0;
  R inv_eps = 1 / sc.eps;
  for (std::size_t j = 0; j < sc.c.size(); ++j) {
    const R u = sc.s[j] * z * inv_eps;
    if (u <= -1 || u >= 1) continue;
    R scale = sc.c[j] * inv_eps;
    for (int i = 0; i < k; ++i) scale *= sc.s[j] * inv_eps;
    total += scale * bump0_derivative<R>(u, k);
  }
  return total;
}

// Integral of phi over (-inf, z].
template <class R>
R phi_antiderivative(const NetScale<R>& sc, const R& z) {
  R total = 0;
  for (std::size_t j = 0; j < sc.c.size(); ++j) {
    total += sc.c[j] / sc.s[j] * bump0_antiderivative<R>(sc.s[j] * z / sc.eps);
  }
  return total;
}

// Shrunk box of the cut-off net: distance > 2R from the boundary, |x| < 1/R.
inline std::optional<std::pair<double, double>> shrunk_box(const Interval& box, double eps) {
  const double a = std::max(box.lo + 2 * eps, -1 / eps);
  const double b = std::min(box.hi - 2 * eps, 1 / eps);
  if (!(a < b)) return std::nullopt;
  return std::make_pair(a, b);
}

template <class R>
R cutoff_value(const NetScale<R>& sc, const Interval& box, const R& y, int order) {
  const auto ab = shrunk_box(box, sc.eps_d);
  if (!ab) return R(0);
  const R a = R(ab->first), b = R(ab->second);
  if (order == 0) return phi_antiderivative(sc, R(y - a)) - phi_antiderivative(sc, R(y - b));
  return phi_derivative(sc, R(y - a), order - 1) - phi_derivative(sc, R(y - b), order - 1);
}

template <class R>
struct EvalTolerance {
  R inner_abs;
  double inner_rel;
  int inner_cells;
};

template <class R>
EvalTolerance<R> default_inner_tolerance() {
  if constexpr (std::is_same_v<R, double>) {
    return {R(1e-13), 1e-12, 4000};
  } else {
    return {R("1e-45"), 1e-45, 4000};
  }
}

// (f B) (*) phi^(k) at y, with B the cut-off of the kernel's box (or the ball
// |t| < 1/R on the whole line).
template <class R>
R convolve(const NetScale<R>& sc, const sym::Expr& f, const Interval& box, const R& y, int k) {
  const auto tol = default_inner_tolerance<R>();
  R total = 0;
  const R inv_ball = 1 / sc.eps;
  for (std::size_t j = 0; j < sc.c.size(); ++j) {
    const R step = sc.eps / sc.s[j];
    auto integrand = [&](const R& u) -> R {
      const R t = y - step * u;
      R w;
      if (box.full()) {
        using std::abs;
        if (abs(t) >= inv_ball) return R(0);
        w = 1;
      } else {
        w = cutoff_value(sc, box, t, 0);
        if (w == 0) return w;
      }
      const R phi = bump0_derivative<R>(u, k);
      if (phi == 0) return phi;
      return w * phi * sym::eval<R>(f, std::span<const R>(&t, 1));
    };
    R scale = sc.c[j] / sc.s[j];
    for (int i = 0; i < k; ++i) scale *= sc.s[j] / sc.eps;
    const R value = integrate<R>(integrand, std::vector<R>{R(-1), R(0), R(1)}, tol.inner_abs,
                                 QuadratureLimits{tol.inner_cells, tol.inner_rel});
    total += scale * value;
  }
  return total;
}

// Value of one factor (power 1) at x.
template <class R>
R factor_value(const NetScale<R>& sc, const Factor& f, const R& x) {
  R y = x;
  if (f.psi) y = sym::eval<R>(f.psi->map, std::span<const R>(&x, 1));
  const auto& leaf = f.leaf;
  switch (leaf.kind) {
    case LeafKind::point: {
      const R z = y - from_rational<R>(leaf.center);
      if (leaf.order < 0) return phi_antiderivative(sc, z);
      return phi_derivative(sc, z, leaf.order);
    }
    case LeafKind::fn: return sym::eval<R>(leaf.f, std::span<const R>(&y, 1));
    case LeafKind::cutoff: return cutoff_value(sc, leaf.box, y, leaf.order);
    case LeafKind::smooth: return convolve(sc, leaf.f, Interval{}, y, 0);
    case LeafKind::kernel: return convolve(sc, leaf.f, leaf.box, y, leaf.order);
  }
  return R(0);
}

template <class R>
R ipow(R v, int p) {
  R r = 1;
  for (int i = 0; i < p; ++i) r *= v;
  return r;
}

template <class R>
R monomial_value(const NetScale<R>& sc, const Monomial& m, const R& x) {
  R v = from_rational<R>(m.coef);
  for (const auto& f : m.factors) {
    if (v == 0) return v;
    v *= ipow(factor_value(sc, f, x), f.power);
  }
  return v;
}

template <class R>
R net_value(const NetScale<R>& sc, const GenFunction& g, const R& x) {
  R v = 0;
  for (const auto& m : g.terms()) v += monomial_value(sc, m, x);
  return v;
}

// Maps a y-interval through the inverse of psi into x, clipped to the domain.
inline Interval pull_interval(const std::optional<gfunc::Diffeo>& psi, double lo, double hi) {
  if (!psi) return {lo, hi};
  auto end_at = [&](double y, bool low_end) {
    if (!std::isfinite(y)) return (low_end == psi->increasing()) ? psi->domain.lo : psi->domain.hi;
    auto x = psi->inverse(y);
    if (x) return *x;
    const auto im = psi->image();
    const bool below = y <= im.lo;
    // y lies outside the image: the whole domain is on one side of it.
    return (below == psi->increasing()) ? psi->domain.lo : psi->domain.hi;
  };
  double a = end_at(lo, true), b = end_at(hi, false);
  if (a > b) std::swap(a, b);
  return {a, b};
}

// Support hull (in x) and breakpoints of one monomial restricted to I.
struct MonomialSupport {
  Interval hull;
  std::vector<double> points;
  bool empty = false;
};

inline MonomialSupport monomial_support(const Monomial& m, Interval I, const NetScale<double>& sc) {
  MonomialSupport out;
  std::vector<double> ys;
  for (const auto& f : m.factors) {
    const auto& leaf = f.leaf;
    double lo = -gfunc::kInf, hi = gfunc::kInf;
    ys.clear();
    if (leaf.kind == LeafKind::point) {
      const double c = asymptotica::to_double(leaf.center);
      lo = c - sc.eps_d;
      if (leaf.order >= 0) hi = c + sc.eps_d;
      ys.push_back(c);
      for (double s : sc.s_d) {
        ys.push_back(c - sc.eps_d / s);
        ys.push_back(c + sc.eps_d / s);
      }
    } else if (leaf.kind == LeafKind::cutoff) {
      const auto ab = shrunk_box(leaf.box, sc.eps_d);
      if (!ab) {
        out.empty = true;
        return out;
      }
      lo = ab->first - sc.eps_d;
      hi = ab->second + sc.eps_d;
      for (double e : {ab->first, ab->second}) {
        for (double s : sc.s_d) {
          ys.push_back(e - sc.eps_d / s);
          ys.push_back(e + sc.eps_d / s);
        }
      }
    }
    const Interval J = pull_interval(f.psi, lo, hi);
    I.lo = std::max(I.lo, J.lo);
    I.hi = std::min(I.hi, J.hi);
    for (double y : ys) {
      const Interval p = pull_interval(f.psi, y, y);
      out.points.push_back(p.lo);
    }
  }
  if (!(I.lo < I.hi)) {
    out.empty = true;
    return out;
  }
  out.hull = I;
  std::vector<double> kept{I.lo, I.hi};
  for (double p : out.points) {
    if (p > I.lo && p < I.hi) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end());
  out.points = std::move(kept);
  return out;
}

template <class R>
struct PairTolerance {
  R abs;
  double rel;
  int cells;
};

template <class R>
PairTolerance<R> pair_tolerance(const pairing::PairingOptions& o) {
  if constexpr (std::is_same_v<R, double>) {
    return {o.abs_tol, o.rel_tol, o.max_cells};
  } else {
    return {R(o.high_abs_tol), o.high_abs_tol, o.max_cells};
  }
}

inline void check_tau_domain(const GenFunction& g, const pairing::TestFunction& tau) {
  if (tau.lo < g.domain().lo || tau.hi > g.domain().hi) {
    throw DomainMismatch("support of " + tau.name + " is not inside the domain");
  }
}

template <class R>
R pairing_value(const GenFunction& g, const pairing::TestFunction& tau, const Rational& eps, int n,
                const pairing::PairingOptions& opts) {
  check_tau_domain(g, tau);
  const auto sc = make_scale<R>(n, eps);
  const auto scd = make_scale<double>(n, eps);
  const auto tol = pair_tolerance<R>(opts);
  R total = 0;
  for (const auto& m : g.terms()) {
    const auto sup = monomial_support(m, Interval{tau.lo, tau.hi}, scd);
    if (sup.empty) continue;
    std::vector<R> pts;
    for (double p : sup.points) pts.push_back(R(p));
    auto integrand = [&](const R& x) -> R {
      const R t = sym::eval<R>(tau.f, std::span<const R>(&x, 1));
      if (t == 0) return t;
      return t * monomial_value(sc, m, x);
    };
    total += integrate<R>(integrand, std::move(pts), tol.abs, QuadratureLimits{tol.cells, tol.rel});
  }
  return total;
}

// Limit of the pairing as eps -> 0, for the shapes where it is known (see
// pairing.hpp). nullopt otherwise.
template <class R>
std::optional<R> limit_value(const GenFunction& g, const pairing::TestFunction& tau,
                             const pairing::PairingOptions& opts) {
  check_tau_domain(g, tau);
  const auto tol = pair_tolerance<R>(opts);
  const sym::Expr x = sym::variable(0);
  R total = 0;
  for (const auto& m : g.terms()) {
    // Regular part: the product of the limits of the regular factors.
    sym::Expr reg = sym::constant(m.coef);
    Interval I{tau.lo, tau.hi};
    std::vector<const Factor*> points;
    for (const auto& f : m.factors) {
      const auto& leaf = f.leaf;
      switch (leaf.kind) {
        case LeafKind::point: points.push_back(&f); continue;
        case LeafKind::cutoff: {
          if (leaf.order != 0) return std::nullopt;
          const Interval J = pull_interval(f.psi, leaf.box.lo, leaf.box.hi);
          I.lo = std::max(I.lo, J.lo);
          I.hi = std::min(I.hi, J.hi);
          continue;
        }
        case LeafKind::kernel:
          if (leaf.order != 0) return std::nullopt;
          break;
        case LeafKind::smooth:
        case LeafKind::fn: break;
      }
      sym::Expr v = f.psi ? sym::substitute(leaf.f, f.psi->map) : leaf.f;
      reg = reg * sym::pow(v, f.power);
    }
    if (!(I.lo < I.hi)) continue;
    auto regular_integral = [&](double lo, double hi) -> R {
      if (!(lo < hi)) return R(0);
      const sym::Expr w = reg * tau.f;
      auto integrand = [&](const R& t) { return sym::eval<R>(w, std::span<const R>(&t, 1)); };
      std::vector<R> pts{R(lo), R(hi)};
      if (lo < 0 && 0 < hi) pts.push_back(R(0));
      return integrate<R>(integrand, std::move(pts), tol.abs, QuadratureLimits{tol.cells, tol.rel});
    };
    if (points.empty()) {
      total += regular_integral(I.lo, I.hi);
      continue;
    }
    // All singular factors must share one center and one composition.
    const Factor& first = *points.front();
    int h_power = 0;
    const Factor* dirac = nullptr;
    for (const Factor* f : points) {
      const bool same_psi = f->psi.has_value() == first.psi.has_value() &&
                            (!f->psi || f->psi->to_string() == first.psi->to_string());
      if (f->leaf.center != first.leaf.center || !same_psi) {
        return std::nullopt;
      }
      if (f->leaf.order < 0) {
        h_power += f->power;
      } else {
        if (dirac || f->power != 1) return std::nullopt;
        dirac = f;
      }
    }
    const double c = asymptotica::to_double(first.leaf.center);
    double x0 = c, jac = 1;
    bool increasing = true;
    if (first.psi) {
      auto r = first.psi->inverse(c);
      if (!r) {
        // Singular factors never fire on the domain: H is 0 or 1 throughout.
        if (dirac) continue;
        if (first.psi->image().lo >= c) total += regular_integral(I.lo, I.hi);
        continue;
      }
      x0 = *r;
      jac = std::abs(first.psi->derivative(x0));
      increasing = first.psi->increasing();
    }
    if (!dirac) {
      total += increasing ? regular_integral(std::max(I.lo, x0), I.hi) : regular_integral(I.lo, std::min(I.hi, x0));
      continue;
    }
    const int k = dirac->leaf.order;
    if (!(I.lo < x0 && x0 < I.hi)) continue;
    const R X0 = first.psi ? R(x0) : from_rational<R>(first.leaf.center);
    if (k == 0) {
      const sym::Expr w = reg * tau.f;
      total += sym::eval<R>(w, std::span<const R>(&X0, 1)) / R(jac) / R(h_power + 1);
      continue;
    }
    if (h_power != 0 || first.psi) return std::nullopt;
    // <delta^(k), w> = (-1)^k w^(k)(c)
    sym::Expr w = reg * tau.f;
    for (int i = 0; i < k; ++i) w = sym::derivative(w);
    const R v = sym::eval<R>(w, std::span<const R>(&X0, 1));
    total += (k % 2 ? -v : v);
  }
  return total;
}

}  // namespace asymptotica::detail
