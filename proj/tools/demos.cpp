#include "commands.hpp"
#include "table.hpp"

#include "asymptotica/gfunc.hpp"
#include "asymptotica/pairing.hpp"
#include "asymptotica/sweep.hpp"
#include "asymptotica/ultra_hb.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <ostream>

namespace asymptotica::cli {

namespace {

using gfunc::GenFunction;

sweep::SweepOptions base_options(const Config& c) {
  sweep::SweepOptions so;
  so.n = c.n;
  so.scales = c.scales();
  so.precision = c.precision == "high" ? sweep::Precision::high : sweep::Precision::standard;
  so.pairing.abs_tol = c.quad_tol;
  return so;
}

std::string fit_note(const sweep::PairingSweep& s) {
  if (!s.fit) return "all fitted values below the zero floor";
  return fmt::format("slope {:.4f}, residual {:.4f} over the last {} levels", s.fit->slope, s.fit->residual,
                     s.fit->points);
}

Table sweep_table(const std::string& title, const sweep::PairingSweep& s) {
  Table t{title, {"epsilon", "value", "limit", "abs_err"}, {}, {}};
  for (const auto& l : s.levels) {
    t.add({num(l.epsilon), num(l.value.real()), s.limit ? num(*s.limit) : "-", num(l.abs_err)});
  }
  t.notes.push_back(fit_note(s));
  return t;
}

// Convergence of the delta pairing. The errors sit far below double rounding,
// so this sweep always runs at 60 digits.
void demo_delta(const Config& c, std::ostream& out) {
  const auto tau = pairing::parse_tau(c.tau);
  auto so = base_options(c);
  so.precision = sweep::Precision::high;
  const auto s = sweep::run(gfunc::delta(), tau, so);
  auto t = sweep_table(fmt::format("delta paired with {}, level {}, 60 digits", tau.name, c.n), s);
  t.notes.push_back(fmt::format("expected slope at least {}", c.n - 0.5));
  t.render(out, c.format);
}

void demo_hdelta(const Config& c, std::ostream& out) {
  const auto tau = pairing::parse_tau(c.tau);
  const auto s = sweep::run(gfunc::heaviside() * gfunc::delta(), tau, base_options(c));
  auto t = sweep_table(fmt::format("H delta paired with {}, level {}", tau.name, c.n), s);
  t.notes.push_back("limit is tau(0)/2");
  t.render(out, c.format);
}

void demo_delta2(const Config& c, std::ostream& out) {
  const auto tau = pairing::parse_tau(c.tau);
  auto so = base_options(c);
  so.subtract_limit = false;
  const auto s = sweep::run(gfunc::pow(gfunc::delta(), 2), tau, so);
  Table t{fmt::format("delta^2 paired with {}, level {}", tau.name, c.n), {"epsilon", "value"}, {}, {}};
  for (const auto& l : s.levels) t.add({num(l.epsilon), num(l.value.real())});
  t.notes.push_back(fit_note(s));
  t.notes.push_back("blow-up like 1/eps: expected slope -1");
  t.render(out, c.format);
}

void demo_h2(const Config& c, std::ostream& out) {
  const auto tau = pairing::parse_tau(c.tau);
  const GenFunction H = gfunc::heaviside();
  const GenFunction diff = gfunc::pow(H, 2) - H;
  Table t{fmt::format("H^2 - H, level {}", c.n), {"epsilon", "sup_on_[-1,1]", "pairing"}, {}, {}};
  const auto opts = base_options(c);
  for (const auto& eps : c.scales()) {
    const double sup = pairing::net_sup(diff, -1, 1, 0, eps, c.n);
    const double p = pairing::pairing(diff, tau, eps, c.n, opts.pairing).real();
    t.add({num(to_double(eps)), num(sup), num(p)});
  }
  const auto v = sweep::associated(gfunc::pow(H, 2), H, pairing::tau_catalog());
  t.notes.push_back(fmt::format("associated(H^2, H): {}", sweep::to_string(v.verdict)));
  for (const auto& p : v.per_tau) {
    t.notes.push_back(p.zero ? fmt::format("  {}: identically zero", p.tau)
                             : fmt::format("  {}: slope {:.4f}, residual {:.4f}", p.tau, p.slope, p.residual));
  }
  t.notes.push_back("sup stays at 1/4 while every pairing tends to 0");
  t.render(out, c.format);
}

void demo_hn(const Config& c, std::ostream& out) {
  const auto tau = pairing::parse_tau(c.tau);
  const GenFunction H = gfunc::heaviside();
  const GenFunction d = gfunc::delta();
  const auto scales = c.scales();
  const Rational finest = scales.back();
  const auto opts = base_options(c);
  const double tau0 = *pairing::limit(d, tau, opts.pairing);
  Table t{fmt::format("(H^p)' = p H^(p-1) delta, level {}, eps {}", c.n, num(to_double(finest))),
          {"p", "difference", "pairing_of_H^(p-1)delta", "tau(0)/p", "abs_err"}, {}, {}};
  for (int p = 2; p <= 4; ++p) {
    const GenFunction lhs = gfunc::derive(gfunc::pow(H, p));
    const GenFunction rhs = Rational(p) * (gfunc::pow(H, p - 1) * d);
    const bool zero = (lhs - rhs).is_zero();
    const double v = pairing::pairing(gfunc::pow(H, p - 1) * d, tau, finest, c.n, opts.pairing).real();
    t.add({std::to_string(p), zero ? "0 (structural)" : "nonzero", num(v), num(tau0 / p), num(std::abs(v - tau0 / p))});
  }
  t.render(out, c.format);
}

void demo_hb(const Config& c, std::ostream& out) {
  struct Counts {
    int functionals = 0, extended = 0, agrees = 0, norm_equal = 0, bound = 0, no_candidate = 0;
  };
  std::map<int, Counts> by_k;
  for (int i = 0; i < c.hb_seeds; ++i) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
    const int k = 1 + i % 5;
    auto& row = by_k[k];
    ++row.functionals;
    const auto T = hb::random_functional(seed, k);
    try {
      const auto M = hb::extend_full(T, {64, seed});
      ++row.extended;
      const auto rep = hb::verify_extension(T, M, 1000, seed);
      for (const auto& e : rep.entries) {
        if (!e.passed) continue;
        if (e.name == "agrees_on_U") ++row.agrees;
        if (e.name == "norm_equal") ++row.norm_equal;
        if (e.name == "bound") ++row.bound;
      }
    } catch (const NoCandidate&) {
      ++row.no_candidate;
    }
  }
  Table t{fmt::format("Hahn-Banach extensions, seeds {}..{}", c.seed, c.seed + c.hb_seeds - 1),
          {"k", "functionals", "extended", "agrees_on_U", "norm_equal", "bound_1000_probes", "no_candidate"}, {}, {}};
  for (const auto& [k, r] : by_k) {
    t.add({std::to_string(k), std::to_string(r.functionals), std::to_string(r.extended), std::to_string(r.agrees),
           std::to_string(r.norm_equal), std::to_string(r.bound), std::to_string(r.no_candidate)});
  }
  t.render(out, c.format);
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"delta", "hdelta", "delta2", "h2", "hn", "hb", "all"};
  return names;
}

void demo(const Config& c, const std::string& which, std::ostream& out) {
  if (which == "delta" || which == "all") demo_delta(c, out);
  if (which == "hdelta" || which == "all") demo_hdelta(c, out);
  if (which == "delta2" || which == "all") demo_delta2(c, out);
  if (which == "h2" || which == "all") demo_h2(c, out);
  if (which == "hn" || which == "all") demo_hn(c, out);
  if (which == "hb" || which == "all") demo_hb(c, out);
}

}  // namespace asymptotica::cli
