#include "commands.hpp"

#include "table.hpp"

#include "asymptotica/certify.hpp"
#include "asymptotica/gfunc.hpp"
#include "asymptotica/lc_io.hpp"
#include "asymptotica/lc_roots.hpp"
#include "asymptotica/mollifier_io.hpp"
#include "asymptotica/pairing.hpp"
#include "asymptotica/sweep.hpp"
#include "asymptotica/ultra_hb_io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace asymptotica::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path);
  f << text;
}

namespace {

std::string series(const lc::LCNumber& a) { return lc::to_string(a); }

sweep::Precision precision(const Config& c) {
  return c.precision == "high" ? sweep::Precision::high : sweep::Precision::standard;
}

pairing::PairingOptions pairing_options(const Config& c) {
  pairing::PairingOptions o;
  o.abs_tol = c.quad_tol;
  return o;
}

void emit_samples(const mollifier::Mollifier& phi, const SampleRequest& s, std::ostream& out) {
  if (s.k <= 0) return;
  if (s.csv.empty()) {
    mollifier::write_samples_csv(out, phi, s.k);
    return;
  }
  std::ofstream f(s.csv);
  if (!f) throw FormatError("cannot write " + s.csv);
  mollifier::write_samples_csv(f, phi, s.k);
}

}  // namespace

void lc_eval(const Config& c, const std::string& expr, std::ostream& out) {
  const lc::LCNumber a = lc::parse_lc(expr, c.truncation_order);
  if (c.format == Format::json) {
    out << lc::to_json(a) << '\n';
  } else {
    out << series(a) << '\n';
  }
}

void lc_roots(const Config& c, const std::vector<std::string>& coeffs, std::ostream& out) {
  std::vector<lc::LCNumber> p;
  for (const auto& s : coeffs) p.push_back(lc::parse_lc(s, c.truncation_order));
  const auto roots = lc::poly_roots(p);
  Table t{"roots", {"k", "valuation", "root"}, {}, {}};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    t.add({std::to_string(i), roots[i].valuation().str(), series(roots[i])});
  }
  t.render(out, c.format);
}

void mollifier_gen(const Config& c, std::optional<std::string> m, const std::string& out_path,
                   const SampleRequest& samples, std::ostream& out) {
  if (c.n < 1) throw ParseError("mollifier gen needs n >= 1");
  mollifier::Mollifier phi;
  if (m) {
    const auto psi = mollifier::tensorize(mollifier::moment_killer(c.n, parse_rational(*m)), c.d);
    phi = mollifier::scale_to_level(psi, c.n);
  } else {
    phi = mollifier::level_mollifier(c.n, c.d);
  }
  const std::string text = mollifier::to_json(phi);
  if (out_path.empty()) {
    out << text << '\n';
  } else {
    write_file(out_path, text);
    out << fmt::format("wrote {} (level {}, dimension {}, radius {:.6g})\n", out_path, phi.level, phi.dim,
                       phi.radius);
  }
  emit_samples(phi, samples, out);
}

void mollifier_certify(const Config& c, const std::string& path, const SampleRequest& samples, std::ostream& out) {
  const auto phi = mollifier::from_json(read_file(path));
  const auto report = mollifier::certify(phi, c.n);
  Table t{fmt::format("certify {} at level {}", path, c.n), {"condition", "passed", "measured", "bound", "detail"}, {}, {}};
  for (const auto& e : report.entries) {
    t.add({e.condition, e.passed ? "yes" : "no", num(e.measured), num(e.bound), e.detail});
  }
  t.notes.push_back(report.passed() ? "all conditions hold" : "some conditions fail");
  t.render(out, c.format);
  emit_samples(phi, samples, out);
  if (!report.passed()) throw CheckFailed("mollifier is not certified at level " + std::to_string(c.n));
}

void gfunc_pair(const Config& c, const std::string& expr, const std::string& csv, std::ostream& out) {
  const auto g = gfunc::parse(expr);
  const auto tau = pairing::parse_tau(c.tau);
  sweep::SweepOptions so;
  so.n = c.n;
  so.scales = c.scales();
  so.precision = precision(c);
  so.pairing = pairing_options(c);
  const auto s = sweep::run(g, tau, so);

  if (!csv.empty()) {
    std::ostringstream f;
    f << "epsilon,re,im,abs_err_vs_limit\n";
    for (const auto& l : s.levels) {
      f << full(l.epsilon) << ',' << full(l.value.real()) << ',' << full(l.value.imag()) << ','
        << (s.limit ? full(l.abs_err) : "nan") << '\n';
    }
    write_file(csv, f.str());
  }
  Table t{fmt::format("pairing of {} against {} at level {}", g.to_string(), tau.name, c.n),
          {"epsilon", "re", "im", "abs_err_vs_limit"}, {}, {}};
  for (const auto& l : s.levels) {
    t.add({num(l.epsilon), num(l.value.real()), num(l.value.imag()), s.limit ? num(l.abs_err) : "nan"});
  }
  t.notes.push_back(s.limit ? "limit " + num(*s.limit) : "no closed-form limit; slope is of |value|");
  if (s.fit) {
    t.notes.push_back(fmt::format("slope {:.4f}, residual {:.4f} over the last {} levels", s.fit->slope,
                                  s.fit->residual, s.fit->points));
  } else {
    t.notes.push_back("all fitted values below the zero floor");
  }
  t.render(out, c.format);
}

void gfunc_classify(const Config& c, const std::string& expr, const std::string& with, std::ostream& out) {
  const auto g = gfunc::parse(expr);
  const auto h = with.empty() ? gfunc::constant(0) : gfunc::parse(with);
  const auto& taus = pairing::tau_catalog();

  Table t{fmt::format("growth of {} at level {}", g.to_string(), c.n), {"tau", "slope", "residual", "moderate", "negligible"}, {}, {}};
  sweep::SweepOptions so;
  so.n = c.n;
  so.scales = c.scales();
  so.fit_last = 0;
  so.precision = precision(c);
  so.subtract_limit = false;
  so.pairing = pairing_options(c);
  for (const auto& tau : taus) {
    const auto s = sweep::run(g, tau, so);
    if (s.below_floor) {
      t.add({tau.name, "inf", "0", "yes", "yes"});
      continue;
    }
    const bool ok = s.fit->residual <= 0.2;
    t.add({tau.name, fmt::format("{:.4f}", s.fit->slope), fmt::format("{:.4f}", s.fit->residual),
           ok ? (s.fit->slope >= -10 ? "yes" : "no") : "inconclusive",
           ok ? (s.fit->slope >= 4 ? "yes" : "no") : "inconclusive"});
  }
  t.render(out, c.format);

  const std::string other = with.empty() ? "0" : h.to_string();
  auto verdict_table = [&](const char* name, const sweep::CatalogVerdict& v) {
    Table vt{fmt::format("{}({}, {}): {}", name, g.to_string(), other, sweep::to_string(v.verdict)),
             {"tau", "slope", "residual", "last_abs"}, {}, {}};
    for (const auto& p : v.per_tau) {
      if (p.zero) {
        vt.add({p.tau, "inf", "0", "0"});
      } else {
        vt.add({p.tau, fmt::format("{:.4f}", p.slope), fmt::format("{:.4f}", p.residual), num(p.last_abs)});
      }
    }
    vt.render(out, c.format);
  };
  verdict_table("associated", sweep::associated(g, h, taus));
  verdict_table("weak_equal", sweep::weak_equal(g, h, taus));
}

void hb_extend(const Config& c, const std::string& space, const std::string& functional, const std::string& out_path,
               int probes, int samples, std::ostream& out) {
  const auto V = hb::space_from_json(read_file(space));
  const auto T = hb::functional_from_json(read_file(functional), V);
  const auto M = hb::extend_full(T, {probes, c.seed});
  const auto report = hb::verify_extension(T, M, samples, c.seed);
  const std::string text = hb::to_json(M);
  if (!out_path.empty()) write_file(out_path, text);

  Table t{"extension", {"index", "log_weight", "value"}, {}, {}};
  for (int i = 0; i < M.space.dim(); ++i) {
    t.add({std::to_string(i), asymptotica::to_string(M.space.log_weights[i]), series(M.values[i])});
  }
  t.notes.push_back(fmt::format("||T|| = {:.12g}, ||M|| = {:.12g}", hb::functional_norm(T), hb::functional_norm(M)));
  for (const auto& e : report.entries) {
    t.notes.push_back(e.name + ": " + (e.passed ? "pass" : "FAIL") + (e.detail.empty() ? "" : " (" + e.detail + ")"));
  }
  if (out_path.empty()) {
    out << text << '\n';
  } else {
    t.render(out, c.format);
  }
  if (!report.passed()) throw CheckFailed("extension failed verification");
}

}  // namespace asymptotica::cli
