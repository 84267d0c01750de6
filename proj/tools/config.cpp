#include "config.hpp"

#include "asymptotica/errors.hpp"
#include "asymptotica/sweep.hpp"

#include <fmt/format.h>

#include <fstream>
#include <ostream>

namespace asymptotica::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T number(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  T out{};
  try {
    if constexpr (std::is_same_v<T, double>) {
      out = std::stod(value, &used);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      out = std::stoull(value, &used);
    } else {
      out = std::stoi(value, &used);
    }
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ParseError("bad value for " + key + ": \"" + value + "\"");
  return out;
}

}  // namespace

std::vector<Rational> Config::scales() const { return sweep::dyadic_scales(scale_first, scale_first + levels - 1); }

const char* to_string(Format f) {
  switch (f) {
    case Format::pretty: return "pretty";
    case Format::csv: return "csv";
    case Format::json: return "json";
  }
  return "?";
}

void apply_setting(Config& c, const std::string& key, const std::string& value) {
  if (key == "truncation_order") {
    c.truncation_order = parse_rational(value);
  } else if (key == "quad_tol") {
    c.quad_tol = number<double>(key, value);
  } else if (key == "scale_first") {
    c.scale_first = number<int>(key, value);
  } else if (key == "levels") {
    c.levels = number<int>(key, value);
  } else if (key == "n") {
    c.n = number<int>(key, value);
  } else if (key == "d") {
    c.d = number<int>(key, value);
  } else if (key == "tau") {
    c.tau = value;
  } else if (key == "format") {
    if (value == "pretty") {
      c.format = Format::pretty;
    } else if (value == "csv") {
      c.format = Format::csv;
    } else if (value == "json") {
      c.format = Format::json;
    } else {
      throw ParseError("format must be pretty, csv or json");
    }
  } else if (key == "precision") {
    if (value != "standard" && value != "high") throw ParseError("precision must be standard or high");
    c.precision = value;
  } else if (key == "seed") {
    c.seed = number<std::uint64_t>(key, value);
  } else if (key == "hb_seeds") {
    c.hb_seeds = number<int>(key, value);
  } else {
    throw ParseError("unknown config key \"" + key + "\"");
  }
}

void apply_file(Config& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(fmt::format("{}:{}: expected key = value", path, lineno));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    apply_setting(c, trim(line.substr(0, eq)), value);
  }
}

void validate(const Config& c) {
  if (c.truncation_order <= 0) throw ParseError("truncation_order must be positive");
  if (!(c.quad_tol > 0)) throw ParseError("quad_tol must be positive");
  if (c.levels < 4) throw ParseError("a sweep needs at least 4 levels");
  if (c.scale_first < 0 || c.scale_first + c.levels - 1 > 40) throw ParseError("scales must lie in 2^0 .. 2^-40");
  if (c.n < 0) throw ParseError("n must be non-negative");
  if (c.d < 1 || c.d > 3) throw ParseError("d must be 1, 2 or 3");
  if (c.hb_seeds < 1) throw ParseError("hb_seeds must be positive");
}

void dump(const Config& c, std::ostream& out) {
  out << "truncation_order = " << asymptotica::to_string(c.truncation_order) << '\n';
  out << fmt::format("quad_tol = {:g}\n", c.quad_tol);
  out << "scale_first = " << c.scale_first << '\n';
  out << "levels = " << c.levels << '\n';
  out << "n = " << c.n << '\n';
  out << "d = " << c.d << '\n';
  out << "tau = " << c.tau << '\n';
  out << "format = " << to_string(c.format) << '\n';
  out << "precision = " << c.precision << '\n';
  out << "seed = " << c.seed << '\n';
  out << "hb_seeds = " << c.hb_seeds << '\n';
}

}  // namespace asymptotica::cli
