#pragma once

#include "asymptotica/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace asymptotica::cli {

enum class Format { pretty, csv, json };

struct Config {
  Rational truncation_order = Rational(12);
  double quad_tol = 1e-10;
  int scale_first = 3;  // sweeps start at eps = 2^-scale_first
  int levels = 10;      // number of dyadic scales
  int n = 3;
  int d = 1;
  std::string tau = "bump";
  Format format = Format::pretty;
  std::string precision = "standard";
  std::uint64_t seed = 42;
  int hb_seeds = 200;

  std::vector<Rational> scales() const;
};

// key = value lines; '#' starts a comment. Unknown keys and bad values raise
// ParseError.
void apply_file(Config& c, const std::string& path);
void apply_setting(Config& c, const std::string& key, const std::string& value);
// ParseError unless tolerances are positive and the sweep has at least 4 scales.
void validate(const Config& c);
void dump(const Config& c, std::ostream& out);

const char* to_string(Format f);

}  // namespace asymptotica::cli
