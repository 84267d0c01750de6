// One line per acceptance criterion; exit status 1 if any fails.

#include "../support.hpp"

#include "asymptotica/certify.hpp"
#include "asymptotica/errors.hpp"
#include "asymptotica/gfunc.hpp"
#include "asymptotica/lc_roots.hpp"
#include "asymptotica/mollifier_io.hpp"
#include "asymptotica/pairing.hpp"
#include "asymptotica/sweep.hpp"
#include "asymptotica/symexpr.hpp"
#include "asymptotica/ultra_hb.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

using namespace asymptotica;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome mollifier_certification() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::pair<int, int> cases[] = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {1, 2}, {2, 2}};
  double worst_moment = 0, worst_mass = 0;
  for (auto [n, d] : cases) {
    // Through the file format, as `mollifier gen` + `certify` do.
    const auto phi = mollifier::from_json(mollifier::to_json(mollifier::level_mollifier(n, d)));
    const auto rep = mollifier::certify(phi, n);
    o.require(rep.passed(), fmt::format("n={} d={} not certified", n, d));
    for (const auto& e : rep.entries) {
      if (e.condition == "moments") {
        o.require(e.measured < 1e-8, fmt::format("n={} d={} moment residual {:.3g}", n, d, e.measured));
        worst_moment = std::max(worst_moment, e.measured);
      } else if (e.condition == "mass") {
        o.require(std::abs(e.measured - 1) <= 1e-10, fmt::format("n={} d={} mass {:.15g}", n, d, e.measured));
        worst_mass = std::max(worst_mass, std::abs(e.measured - 1));
      } else if (e.condition == "l1") {
        o.require(e.measured <= 1 + 1.0 / n + 1e-6, fmt::format("n={} d={} L1 {:.9g}", n, d, e.measured));
      } else if (e.condition == "derivatives") {
        o.require(e.passed, fmt::format("n={} d={} derivative sup over bound", n, d));
      }
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 10, fmt::format("runtime {:.2f} s", t));
  if (o.pass) o.detail = fmt::format("6 cases, worst moment {:.2g}, worst |mass-1| {:.2g}, {:.2f} s", worst_moment, worst_mass, t);
  return o;
}

Outcome field_laws() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(42);
  const Rational T = lc::default_truncation();
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_number(rng, -3, 3);
    const auto b = testing::random_number(rng, -3, 3);
    const auto c = testing::random_number(rng, -3, 3);
    o.require((a * b).valuation() == a.valuation() + b.valuation(), fmt::format("v(ab) at case {}", i));
    o.require((a + b).valuation() >= std::min(a.valuation(), b.valuation()), fmt::format("v(a+b) at case {}", i));
    o.require((a - b).valuation() >= std::min((a - c).valuation(), (c - b).valuation()),
              fmt::format("ultrametric at case {}", i));
    const auto r = a * lc::inverse(a) - lc::LCNumber(1.0);
    const Rational v = a.valuation().value();
    const Rational need = v <= 0 ? T - 2 * v : T;
    o.require(r.is_zero() || r.valuation() >= lc::Valuation(need), fmt::format("inverse residual at case {}", i));
    ++checked;
  }
  const double t = seconds_since(t0);
  o.require(t < 5, fmt::format("runtime {:.2f} s", t));
  if (o.pass) o.detail = fmt::format("{} triples, {:.2f} s", checked, t);
  return o;
}

// Expands prod (x - r_i), coefficients by increasing degree.
std::vector<lc::LCNumber> from_roots(const std::vector<lc::LCNumber>& roots) {
  std::vector<lc::LCNumber> p{lc::LCNumber(1.0)};
  for (const auto& r : roots) {
    std::vector<lc::LCNumber> q(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= p[i] * r;
    }
    p = std::move(q);
  }
  return p;
}

Outcome root_recovery() {
  Outcome o;
  std::mt19937_64 rng(4242);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 1 + trial % 4;
    std::vector<lc::LCNumber> planted;
    for (int i = 0; i < degree; ++i) planted.push_back(testing::random_number(rng, -2, 2, 2));
    std::vector<lc::LCNumber> found;
    try {
      found = lc::poly_roots(from_roots(planted));
    } catch (const Error& e) {
      o.require(false, fmt::format("trial {}: {}", trial, e.what()));
      continue;
    }
    std::vector<Rational> pe, fe;
    for (const auto& r : planted) pe.push_back(r.valuation().value());
    for (const auto& r : found) fe.push_back(r.valuation().value());
    std::sort(pe.begin(), pe.end());
    std::sort(fe.begin(), fe.end());
    o.require(pe == fe, fmt::format("trial {}: leading exponents differ", trial));
    if (pe != fe) continue;
    // Match each planted root to the unused recovered root closest in the
    // ultrametric, then compare coefficients at the planted exponents.
    std::vector<bool> used(found.size(), false);
    for (const auto& r : planted) {
      std::size_t best = found.size();
      for (std::size_t j = 0; j < found.size(); ++j) {
        if (used[j]) continue;
        if (best == found.size() || (found[j] - r).valuation() > (found[best] - r).valuation()) best = j;
      }
      used[best] = true;
      for (const auto& t : r.terms()) {
        const double err = std::abs(found[best].coefficient_at(t.exponent) - t.coef);
        worst = std::max(worst, err);
        o.require(err < 1e-9, fmt::format("trial {}: coefficient error {:.3g} at rho^{}", trial, err,
                                          to_string(t.exponent)));
      }
    }
  }
  if (o.pass) o.detail = fmt::format("100 polynomials, worst coefficient error {:.2g}", worst);
  return o;
}

// 50-digit oracle for the integral of tau over x > 0.
double heaviside_oracle() {
  using F = boost::multiprecision::cpp_bin_float_50;
  boost::math::quadrature::tanh_sinh<F> ts;
  auto f = [](F u) -> F {
    const F w = 1 - u * u;
    return w <= 0 ? F(0) : F(exp(-1 / w));
  };
  // u = x - 1/5 runs over (-1/5, 1).
  return static_cast<double>(ts.integrate(f, F(-1) / 5, F(1)));
}

Outcome pairing_decay() {
  Outcome o;
  const auto& tau = pairing::default_tau();
  struct Case {
    const char* name;
    gfunc::GenFunction g;
    double oracle;
  };
  const Case cases[] = {
      {"delta", gfunc::delta(), testing::tau_bump(0)},
      {"delta'", gfunc::delta(Rational(0), 1), -testing::tau_bump_prime(0)},
      {"H", gfunc::heaviside(), heaviside_oracle()},
  };
  std::string slopes;
  for (const auto& c : cases) {
    const auto lim = pairing::limit(c.g, tau);
    o.require(lim && std::abs(*lim - c.oracle) < 1e-14, fmt::format("{}: closed-form limit off the oracle", c.name));
    for (int n = 2; n <= 4; ++n) {
      sweep::SweepOptions so;
      so.n = n;
      so.scales = sweep::dyadic_scales(5, 12);
      so.fit_last = 0;
      so.precision = sweep::Precision::high;
      const auto s = sweep::run(c.g, tau, so);
      if (!s.fit) {
        o.require(false, fmt::format("{} n={}: every error below the floor", c.name, n));
        continue;
      }
      slopes += fmt::format(" {}/{}:{:.2f}", c.name, n, s.fit->slope);
      o.require(s.fit->points == 8, fmt::format("{} n={}: only {} fitted points", c.name, n, s.fit->points));
      o.require(s.fit->slope >= n - 0.5, fmt::format("{} n={}: slope {:.3f}", c.name, n, s.fit->slope));
      o.require(s.fit->residual < 0.2, fmt::format("{} n={}: residual {:.3f}", c.name, n, s.fit->residual));
    }
  }
  if (o.pass) o.detail = "slopes" + slopes;
  return o;
}

Outcome classical_products() {
  Outcome o;
  const auto& tau = pairing::default_tau();
  const Rational finest = Rational(1, 4096);
  const double tau0 = testing::tau_bump(0);
  const auto H = gfunc::heaviside();
  const auto d = gfunc::delta();
  const double hd = pairing::pairing(H * d, tau, finest, 3).real();
  o.require(std::abs(hd - tau0 / 2) < 5e-3, fmt::format("H delta {:.6g} vs {:.6g}", hd, tau0 / 2));
  std::string detail = fmt::format("H delta err {:.2g}", std::abs(hd - tau0 / 2));
  for (int n = 2; n <= 3; ++n) {
    const double v = pairing::pairing(gfunc::pow(H, n - 1) * d, tau, finest, 3).real();
    o.require(std::abs(v - tau0 / n) < 5e-3, fmt::format("H^{} delta {:.6g} vs {:.6g}", n - 1, v, tau0 / n));
    detail += fmt::format(", H^{} delta err {:.2g}", n - 1, std::abs(v - tau0 / n));
  }
  sweep::SweepOptions so;
  so.subtract_limit = false;
  const auto s = sweep::run(gfunc::pow(d, 2), tau, so);
  const double slope = s.fit ? s.fit->slope : 0;
  o.require(s.fit && std::abs(slope + 1) <= 0.1, fmt::format("delta^2 slope {:.4f}", slope));
  detail += fmt::format(", delta^2 slope {:.4f}", slope);
  if (o.pass) o.detail = detail;
  return o;
}

Outcome algebra_dichotomy() {
  Outcome o;
  const auto H = gfunc::heaviside();
  const auto v = sweep::associated(gfunc::pow(H, 2), H, pairing::tau_catalog());
  o.require(v.verdict == sweep::Verdict::holds, std::string("associated(H^2, H): ") + sweep::to_string(v.verdict));
  double lo = 1, hi = 0;
  for (const auto& eps : sweep::dyadic_scales(3, 12)) {
    const double sup = pairing::net_sup(gfunc::pow(H, 2) - H, -1, 1, 0, eps, 3);
    lo = std::min(lo, sup);
    hi = std::max(hi, sup);
    o.require(std::abs(sup - 0.25) <= 0.01, fmt::format("sup {:.6f} at eps {:.3g}", sup, to_double(eps)));
  }
  if (o.pass) o.detail = fmt::format("associated holds on {} test functions, sup in [{:.6f}, {:.6f}]", v.per_tau.size(), lo, hi);
  return o;
}

Outcome weak_preservation() {
  Outcome o;
  const auto f = sym::parse("1 + x^2");
  const auto lhs = gfunc::sigma(f) * gfunc::delta();
  double worst = 0;
  for (const auto& tau : pairing::tau_catalog()) {
    const pairing::TestFunction ftau{tau.name + "*f", f * tau.f, tau.lo, tau.hi};
    for (const auto& eps : sweep::dyadic_scales(3, 8)) {
      const double diff = std::abs(pairing::pairing(lhs, tau, eps, 3) - pairing::pairing(gfunc::delta(), ftau, eps, 3));
      worst = std::max(worst, diff);
      o.require(diff < 1e-9, fmt::format("{} at eps {:.3g}: {:.3g}", tau.name, to_double(eps), diff));
    }
  }
  if (o.pass) o.detail = fmt::format("3 test functions x 6 scales, worst {:.2g}", worst);
  return o;
}

Outcome diffeomorphisms() {
  Outcome o;
  struct Case {
    const char* psi;
    gfunc::Interval domain;
    std::string tau;
    double dpsi0;
  };
  const Case cases[] = {
      {"2*x", {}, "bump", 2.0},
      {"x + x^3/10", {-1, 1}, "bump(10*x/9)@-0.9:0.9", 1.0},
  };
  const Rational finest = Rational(1, 4096);
  std::string detail;
  for (const auto& c : cases) {
    const auto psi = gfunc::make_diffeo(sym::parse(c.psi), c.domain);
    const auto tau = pairing::parse_tau(c.tau);
    const auto delta = gfunc::delta();
    const double composed = pairing::pairing(gfunc::compose_diffeo(delta, psi), tau, finest, 3).real();
    const double pulled = pairing::pairing(gfunc::pullback(delta, psi), tau, finest, 3).real();
    const double oracle = sym::eval(tau.f, 0.0) / c.dpsi0;
    o.require(std::abs(composed - pulled) < 5e-3, fmt::format("psi={}: routes {:.6g} vs {:.6g}", c.psi, composed, pulled));
    o.require(std::abs(composed - oracle) < 5e-3, fmt::format("psi={}: {:.6g} vs oracle {:.6g}", c.psi, composed, oracle));
    detail += fmt::format("{}psi={}: |routes| {:.2g}", detail.empty() ? "" : ", ", c.psi, std::abs(composed - pulled));
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome hahn_banach() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int probes = 0;
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    const int k = 1 + i % 5;
    const auto T = hb::random_functional(seed, k);
    hb::UltraFunctional M;
    try {
      M = hb::extend_full(T, {64, seed});
    } catch (const Error& e) {
      o.require(false, fmt::format("seed {}: {}", seed, e.what()));
      continue;
    }
    o.require(M.on_whole_space(), fmt::format("seed {}: extension misses coordinates", seed));
    o.require(M.norm_valuation() == T.norm_valuation(), fmt::format("seed {}: norm changed", seed));
    o.require(M.restrict_to(T.domain).values == T.values, fmt::format("seed {}: differs on U", seed));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const auto bound = M.norm_valuation();
    for (int p = 0; p < 1000; ++p) {
      hb::Vector x;
      for (int j = 0; j < k; ++j) x.push_back(testing::random_number(rng, -3, 3));
      const auto lhs = M.apply(x);
      ++probes;
      if (lhs.is_zero()) continue;
      if (!(lhs.valuation() >= bound + hb::norm_valuation(M.space, x))) {
        o.require(false, fmt::format("seed {}: bound fails on a probe", seed));
        break;
      }
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 10, fmt::format("runtime {:.2f} s", t));
  if (o.pass) o.detail = fmt::format("200 functionals, {} probes, {:.2f} s", probes, t);
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const std::string cli = ASYMPTOTICA_CLI_PATH;
  const std::string a = "acceptance_demo_a.txt", b = "acceptance_demo_b.txt";
  const int ra = std::system((cli + " demo all --seed 42 > " + a).c_str());
  const int rb = std::system((cli + " demo all --seed 42 > " + b).c_str());
  o.require(ra == 0 && rb == 0, fmt::format("exit statuses {} and {}", ra, rb));
  const std::string sa = slurp(a), sb = slurp(b);
  o.require(!sa.empty(), "empty output");
  o.require(sa == sb, "outputs differ");
  if (o.pass) o.detail = fmt::format("{} bytes, identical", sa.size());
  std::remove(a.c_str());
  std::remove(b.c_str());
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"mollifier certification", mollifier_certification},
      {"LC field laws", field_laws},
      {"root recovery", root_recovery},
      {"pairing decay", pairing_decay},
      {"classical products", classical_products},
      {"algebra dichotomy", algebra_dichotomy},
      {"exact weak preservation", weak_preservation},
      {"diffeomorphism weak preservation", diffeomorphisms},
      {"Hahn-Banach extension", hahn_banach},
      {"determinism", determinism},
  };
  int failed = 0;
  int i = 0;
  for (const auto& [name, run] : criteria) {
    ++i;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failed;
    std::printf("criterion %2d %-34s %s  %s\n", i, name, out.pass ? "PASS" : "FAIL", out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
