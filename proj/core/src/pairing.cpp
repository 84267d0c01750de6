#include "asymptotica/pairing.hpp"

#include "net_eval.hpp"

#include <cmath>

namespace asymptotica::pairing {

const std::vector<TestFunction>& tau_catalog() {
  static const std::vector<TestFunction> catalog{
      {"bump", sym::parse("bump(x - 1/5)"), -0.8, 1.2},
      {"wide", sym::parse("bump((x - 1/4)/2)"), -1.75, 2.25},
      {"poly", sym::parse("(1 + x + x^2)*bump(5*x/4 - 1/4)"), -0.6, 1.0},
  };
  return catalog;
}

const TestFunction& default_tau() { return tau_catalog().front(); }

TestFunction parse_tau(const std::string& spec) {
  for (const auto& t : tau_catalog()) {
    if (t.name == spec) return t;
  }
  const auto at = spec.rfind('@');
  const auto colon = spec.rfind(':');
  if (at == std::string::npos || colon == std::string::npos || colon < at) {
    throw ParseError("test function \"" + spec + "\": expected a catalog name or formula@lo:hi");
  }
  TestFunction t;
  t.name = spec;
  t.f = sym::parse(spec.substr(0, at));
  t.lo = to_double(parse_rational(spec.substr(at + 1, colon - at - 1)));
  t.hi = to_double(parse_rational(spec.substr(colon + 1)));
  if (!(t.lo < t.hi)) throw ParseError("test function support must satisfy lo < hi");
  return t;
}

std::complex<double> pairing(const gfunc::GenFunction& g, const TestFunction& tau, const Rational& eps, int n,
                             const PairingOptions& opts) {
  return {detail::pairing_value<double>(g, tau, eps, n, opts), 0.0};
}

std::optional<double> limit(const gfunc::GenFunction& g, const TestFunction& tau, const PairingOptions& opts) {
  return detail::limit_value<double>(g, tau, opts);
}

double net_value(const gfunc::GenFunction& g, const Rational& eps, int n, double x, int alpha) {
  const auto sc = detail::make_scale<double>(n, eps);
  const auto d = alpha == 0 ? g : gfunc::derive(g, alpha);
  return detail::net_value(sc, d, x);
}

double net_sup(const gfunc::GenFunction& g, double lo, double hi, int alpha, const Rational& eps, int n) {
  if (!(lo <= hi)) throw DomainMismatch("net_sup needs lo <= hi");
  const auto sc = detail::make_scale<double>(n, eps);
  const auto d = alpha == 0 ? g : gfunc::derive(g, alpha);
  std::vector<double> xs;
  constexpr int kGrid = 4096;
  constexpr int kLocal = 257;
  for (int i = 0; i <= kGrid; ++i) xs.push_back(lo + (hi - lo) * i / kGrid);
  // Singular factors vary on the scale eps: sample across each support.
  for (const auto& m : d.terms()) {
    for (const auto& f : m.factors) {
      std::vector<double> centers;
      if (f.leaf.kind == gfunc::LeafKind::point) {
        centers.push_back(to_double(f.leaf.center));
      } else if (f.leaf.kind == gfunc::LeafKind::cutoff) {
        if (auto ab = detail::shrunk_box(f.leaf.box, sc.eps_d)) centers = {ab->first, ab->second};
      }
      for (double c : centers) {
        for (int i = 0; i < kLocal; ++i) {
          const double y = c - sc.eps_d + 2 * sc.eps_d * i / (kLocal - 1);
          const auto p = detail::pull_interval(f.psi, y, y);
          xs.push_back(p.lo);
        }
      }
    }
  }
  double best = 0, best_x = lo;
  for (double x : xs) {
    if (x < lo || x > hi) continue;
    const double v = std::abs(detail::net_value(sc, d, x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const double h = std::min((hi - lo) / kGrid, sc.eps_d / kLocal);
  for (int i = 0; i < kLocal; ++i) {
    const double x = std::clamp(best_x - h + 2 * h * i / (kLocal - 1), lo, hi);
    best = std::max(best, std::abs(detail::net_value(sc, d, x)));
  }
  return best;
}

double cutoff_value(const gfunc::Interval& box, const Rational& eps, int n, double x) {
  const auto sc = detail::make_scale<double>(n, eps);
  return detail::cutoff_value(sc, box, x, 0);
}

}  // namespace asymptotica::pairing
