#pragma once

#include "config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace asymptotica::cli {

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // printed under the table

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void render(std::ostream& out, Format f) const;
};

std::string num(double v);   // 12 significant digits
std::string full(double v);  // round-trip precision

}  // namespace asymptotica::cli
