#include "asymptotica/sweep.hpp"

#include "net_eval.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace asymptotica::sweep {

namespace {
constexpr double kInfScale = std::numeric_limits<double>::infinity();
}

std::vector<Rational> dyadic_scales(int first, int last) {
  std::vector<Rational> out;
  for (int k = first; k <= last; ++k) out.push_back(Rational(BigInt(1), BigInt(1) << k));
  return out;
}

double zero_floor(Precision p) { return p == Precision::standard ? 1e-12 : 1e-43; }

namespace {

template <class R>
void fill_levels(PairingSweep& s, const gfunc::GenFunction& g, const pairing::TestFunction& tau,
                 const SweepOptions& opts) {
  std::optional<R> limit;
  if (opts.subtract_limit) limit = detail::limit_value<R>(g, tau, opts.pairing);
  if (limit) s.limit = detail::to_double(*limit);
  for (const auto& eps : opts.scales) {
    const R v = detail::pairing_value<R>(g, tau, eps, opts.n, opts.pairing);
    using std::abs;
    const R err = limit ? R(abs(v - *limit)) : R(abs(v));
    s.levels.push_back({eps, to_double(eps), {detail::to_double(v), 0.0}, detail::to_double(err)});
  }
}

}  // namespace

Fit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0 && y[i] > 0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  Fit f;
  f.points = static_cast<int>(lx.size());
  if (f.points < 2) throw IllConditionedFit("fewer than 2 positive values to fit");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= f.points;
  my /= f.points;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw IllConditionedFit("all scales coincide");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (f.intercept + f.slope * lx[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / f.points);
  return f;
}

PairingSweep run(const gfunc::GenFunction& g, const pairing::TestFunction& tau, const SweepOptions& opts) {
  if (opts.scales.size() < 4) throw IllConditionedFit("a sweep needs at least 4 scales");
  double lo = kInfScale, hi = 0;
  for (const auto& e : opts.scales) {
    lo = std::min(lo, to_double(e));
    hi = std::max(hi, to_double(e));
  }
  if (hi / lo < 100 * (1 - 1e-12)) throw IllConditionedFit("a sweep needs scales spanning 2 decades");
  PairingSweep s;
  s.tau = tau.name;
  if (opts.precision == Precision::standard) {
    fill_levels<double>(s, g, tau, opts);
  } else {
    fill_levels<detail::HighReal>(s, g, tau, opts);
  }
  std::sort(s.levels.begin(), s.levels.end(), [](const Level& a, const Level& b) { return a.epsilon > b.epsilon; });
  std::size_t first = 0;
  if (opts.fit_last > 0 && s.levels.size() > static_cast<std::size_t>(opts.fit_last)) {
    first = s.levels.size() - static_cast<std::size_t>(opts.fit_last);
  }
  std::vector<double> xs, ys;
  const double floor = zero_floor(opts.precision);
  bool all_below = true;
  for (std::size_t i = first; i < s.levels.size(); ++i) {
    xs.push_back(s.levels[i].epsilon);
    ys.push_back(s.levels[i].abs_err > floor ? s.levels[i].abs_err : 0.0);
    if (s.levels[i].abs_err > floor) all_below = false;
  }
  s.below_floor = all_below;
  if (!all_below) {
    if (xs.size() < 4) throw IllConditionedFit("a fit needs at least 4 levels");
    s.fit = fit_log_log(xs, ys);
  }
  return s;
}

double estimate_valuation(const PairingSweep& s) {
  if (!s.fit) throw IllConditionedFit("values are below the zero floor; no slope to estimate");
  if (s.fit->residual > 0.2) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "fit residual %.3g exceeds 0.2 (slope %.3g)", s.fit->residual, s.fit->slope);
    throw IllConditionedFit(buf);
  }
  return s.fit->slope;
}

Classification classify(const PairingSweep& s, double m_max, double p_max) {
  Classification c;
  if (s.below_floor) {
    c.zero = c.moderate = c.negligible = true;
    c.slope = kInfScale;
    return c;
  }
  c.slope = estimate_valuation(s);
  c.residual = s.fit->residual;
  c.moderate = c.slope >= -m_max;
  c.negligible = c.slope >= p_max;
  return c;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds on catalog";
    case Verdict::fails: return "fails on catalog";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

enum class Rule { negligible, vanishing };

CatalogVerdict decide(const gfunc::GenFunction& f, const gfunc::GenFunction& g,
                      const std::vector<pairing::TestFunction>& taus, const VerdictOptions& opts, Rule rule) {
  const gfunc::GenFunction diff = f - g;
  CatalogVerdict out;
  bool failed = false, unsure = false;
  for (const auto& tau : taus) {
    SweepOptions so;
    so.n = opts.n;
    so.scales = opts.scales;
    so.fit_last = 0;
    so.precision = opts.precision;
    so.subtract_limit = false;
    TauSlope ts;
    ts.tau = tau.name;
    if (diff.is_zero()) {
      ts.zero = true;
      out.per_tau.push_back(ts);
      continue;
    }
    const PairingSweep s = run(diff, tau, so);
    ts.last_abs = s.levels.back().abs_err;
    if (s.below_floor) {
      ts.zero = true;
      out.per_tau.push_back(ts);
      continue;
    }
    ts.slope = s.fit->slope;
    ts.residual = s.fit->residual;
    out.per_tau.push_back(ts);
    if (ts.residual > 0.2) {
      unsure = true;
      continue;
    }
    bool ok;
    if (rule == Rule::negligible) {
      ok = ts.slope >= opts.p_max;
    } else {
      ok = ts.slope > 0 && s.levels.back().abs_err < s.levels.front().abs_err;
    }
    if (!ok) failed = true;
  }
  out.verdict = failed ? Verdict::fails : unsure ? Verdict::inconclusive : Verdict::holds;
  return out;
}

}  // namespace

CatalogVerdict weak_equal(const gfunc::GenFunction& f, const gfunc::GenFunction& g,
                          const std::vector<pairing::TestFunction>& taus, VerdictOptions opts) {
  return decide(f, g, taus, opts, Rule::negligible);
}

CatalogVerdict associated(const gfunc::GenFunction& f, const gfunc::GenFunction& g,
                          const std::vector<pairing::TestFunction>& taus, VerdictOptions opts) {
  return decide(f, g, taus, opts, Rule::vanishing);
}

}  // namespace asymptotica::sweep
