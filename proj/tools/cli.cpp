#include "cli.hpp"

#include "commands.hpp"
#include "config.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <functional>
#include <ostream>

namespace asymptotica::cli {

namespace {

void report(std::ostream& err, const std::string& kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

// Flags that override the config file. Unset means "not given".
struct Overrides {
  std::optional<std::string> truncation_order;
  std::optional<double> quad_tol;
  std::optional<int> scale_first;
  std::optional<int> levels;
  std::optional<int> n;
  std::optional<int> d;
  std::optional<std::string> tau;
  std::optional<std::string> format;
  std::optional<std::string> precision;
  std::optional<std::uint64_t> seed;
  std::optional<int> hb_seeds;

  void apply(Config& c) const {
    if (truncation_order) apply_setting(c, "truncation_order", *truncation_order);
    if (quad_tol) c.quad_tol = *quad_tol;
    if (scale_first) c.scale_first = *scale_first;
    if (levels) c.levels = *levels;
    if (n) c.n = *n;
    if (d) c.d = *d;
    if (tau) c.tau = *tau;
    if (format) apply_setting(c, "format", *format);
    if (precision) apply_setting(c, "precision", *precision);
    if (seed) c.seed = *seed;
    if (hb_seeds) c.hb_seeds = *hb_seeds;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Levi-Civita numbers, mollifiers, generalized functions and ultra Hahn-Banach extensions",
               "asymptotica"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  Overrides o;
  std::string config_path;
  bool dump_config = false;
  app.add_option("--config", config_path, "key = value file (default: $ASYMPTOTICA_CONFIG)");
  app.add_flag("--dump-config", dump_config, "print the effective configuration and exit");
  app.add_option("--truncation-order", o.truncation_order, "LC truncation order (rational)");
  app.add_option("--quad-tol", o.quad_tol, "absolute quadrature tolerance of pairings");
  app.add_option("--scale-first", o.scale_first, "first sweep scale is 2^-k");
  app.add_option("--levels", o.levels, "number of dyadic sweep scales");
  app.add_option("--n", o.n, "mollifier level");
  app.add_option("--d", o.d, "dimension");
  app.add_option("--tau", o.tau, "test function: bump, wide, poly or formula@lo:hi");
  app.add_option("--format", o.format, "pretty, csv or json");
  app.add_option("--precision", o.precision, "standard or high (60 digits)");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--hb-seeds", o.hb_seeds, "functionals in the Hahn-Banach demo");

  std::function<void(const Config&)> action;

  auto* lc = app.add_subcommand("lc", "Levi-Civita arithmetic");
  lc->require_subcommand(1);
  std::string lc_expr;
  auto* lc_eval_cmd = lc->add_subcommand("eval", "evaluate an LC expression");
  lc_eval_cmd->add_option("expr", lc_expr, "expression, e.g. \"inverse(1+rho)\"")->required();
  lc_eval_cmd->callback([&] { action = [&](const Config& c) { lc_eval(c, lc_expr, out); }; });
  std::vector<std::string> lc_coeffs;
  auto* lc_roots_cmd = lc->add_subcommand("roots", "roots of c0 + c1 x + ... (coefficients by increasing degree)");
  lc_roots_cmd->add_option("coeffs", lc_coeffs, "coefficients as LC expressions")->required()->expected(2, -1);
  lc_roots_cmd->callback([&] { action = [&](const Config& c) { lc_roots(c, lc_coeffs, out); }; });

  auto* mol = app.add_subcommand("mollifier", "level-n mollifiers");
  mol->require_subcommand(1);
  SampleRequest samples;
  std::optional<std::string> gen_m;
  std::string gen_out;
  auto* gen = mol->add_subcommand("gen", "build the level-n mollifier");
  gen->add_option("--m", gen_m, "dilation of the moment recursion (default 9dn)");
  gen->add_option("--out", gen_out, "JSON output (default stdout)");
  gen->add_option("--samples", samples.k, "also export k samples per axis");
  gen->add_option("--csv", samples.csv, "sample CSV path (default stdout)");
  gen->callback([&] { action = [&](const Config& c) { mollifier_gen(c, gen_m, gen_out, samples, out); }; });
  std::string cert_file;
  auto* cert = mol->add_subcommand("certify", "check the seven level-n conditions");
  cert->add_option("file", cert_file, "mollifier JSON")->required();
  cert->add_option("--samples", samples.k, "also export k samples per axis");
  cert->add_option("--csv", samples.csv, "sample CSV path (default stdout)");
  cert->callback([&] { action = [&](const Config& c) { mollifier_certify(c, cert_file, samples, out); }; });

  auto* gf = app.add_subcommand("gfunc", "generalized functions");
  gf->require_subcommand(1);
  std::string expr, csv, with;
  auto* pair = gf->add_subcommand("pair", "scale sweep of a pairing");
  pair->add_option("--expr", expr, "generalized function, e.g. \"mul(H,delta)\"")->required();
  pair->add_option("--csv", csv, "CSV output: epsilon,re,im,abs_err_vs_limit");
  pair->callback([&] { action = [&](const Config& c) { gfunc_pair(c, expr, csv, out); }; });
  auto* cls = gf->add_subcommand("classify", "moderate, negligible and associated verdicts");
  cls->add_option("--expr", expr, "generalized function")->required();
  cls->add_option("--with", with, "compare against this instead of 0");
  cls->callback([&] { action = [&](const Config& c) { gfunc_classify(c, expr, with, out); }; });

  auto* hbc = app.add_subcommand("hb", "ultra Hahn-Banach extension");
  hbc->require_subcommand(1);
  std::string space, functional, hb_out;
  int probes = 64, hb_samples = 1000;
  auto* ext = hbc->add_subcommand("extend", "extend a functional to the whole space");
  ext->add_option("--space", space, "weights JSON")->required();
  ext->add_option("--functional", functional, "functional JSON")->required();
  ext->add_option("--out", hb_out, "extension JSON (default stdout)");
  ext->add_option("--probes", probes, "random probes per candidate");
  ext->add_option("--samples", hb_samples, "random vectors in the final bound check");
  ext->callback([&] { action = [&](const Config& c) { hb_extend(c, space, functional, hb_out, probes, hb_samples, out); }; });

  std::string which;
  auto* dm = app.add_subcommand("demo", "canned experiments");
  dm->add_option("name", which, "delta, hdelta, delta2, h2, hn, hb or all")
      ->required()
      ->check(CLI::IsMember(demo_names()));
  dm->callback([&] { action = [&](const Config& c) { demo(c, which, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, "ArgumentError", e.what());
    return 2;
  }

  try {
    Config c;
    if (config_path.empty()) {
      if (const char* env = std::getenv("ASYMPTOTICA_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) apply_file(c, config_path);
    o.apply(c);
    validate(c);
    if (dump_config) {
      dump(c, out);
      return 0;
    }
    if (!action) {
      report(err, "ArgumentError", "a subcommand is required: lc, mollifier, gfunc, hb or demo");
      return 2;
    }
    action(c);
    return 0;
  } catch (const Error& e) {
    report(err, e.kind(), e.what());
    return e.numerical() ? 1 : 2;
  } catch (const std::exception& e) {
    report(err, "InternalError", e.what());
    return 1;
  }
}

}  // namespace asymptotica::cli
