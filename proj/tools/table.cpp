#include "table.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <ostream>

namespace asymptotica::cli {

std::string num(double v) { return fmt::format("{:.12g}", v); }
std::string full(double v) { return fmt::format("{:.17g}", v); }

void Table::render(std::ostream& out, Format f) const {
  if (f == Format::json) {
    nlohmann::ordered_json j;
    j["table"] = title;
    j["columns"] = columns;
    j["rows"] = rows;
    j["notes"] = notes;
    out << j.dump() << '\n';
    return;
  }
  if (f == Format::csv) {
    out << "# " << title << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
      out << '\n';
    }
    for (const auto& n : notes) out << "# " << n << '\n';
    return;
  }
  std::vector<std::size_t> width(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += "  ";
      s += fmt::format("{:>{}}", cells[i], width[i]);
    }
    out << s << '\n';
  };
  out << "== " << title << '\n';
  line(columns);
  for (const auto& r : rows) line(r);
  for (const auto& n : notes) out << "   " << n << '\n';
  out << '\n';
}

}  // namespace asymptotica::cli
