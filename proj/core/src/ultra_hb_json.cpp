#include "asymptotica/ultra_hb_io.hpp"

#include "asymptotica/lc_io.hpp"
#include "json_support.hpp"

namespace asymptotica::hb {

namespace {

using detail::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

DiagonalSpace space_from_json(std::string_view text) {
  const json j = parse_json(text, "space JSON");
  try {
    if (j.contains("log_weights")) {
      DiagonalSpace V;
      for (const auto& q : j.at("log_weights")) V.log_weights.push_back(detail::rational_from_json(q));
      if (V.dim() == 0) throw FormatError("space needs at least one weight");
      return V;
    }
    if (j.contains("weights")) {
      auto w = j.at("weights").get<std::vector<double>>();
      if (w.empty()) throw FormatError("space needs at least one weight");
      return DiagonalSpace::from_weights(w);
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("space JSON: ") + e.what());
  }
  throw FormatError("space JSON needs \"weights\" or \"log_weights\"");
}

UltraFunctional functional_from_json(std::string_view text, const DiagonalSpace& V) {
  const json j = parse_json(text, "functional JSON");
  try {
    std::vector<int> domain = j.at("domain").get<std::vector<int>>();
    Vector values;
    for (const auto& v : j.at("values")) {
      values.push_back(v.is_string() ? lc::parse_lc(v.get<std::string>()) : detail::lc_from_json(v));
    }
    return make_functional(V, std::move(domain), std::move(values));
  } catch (const json::exception& e) {
    throw FormatError(std::string("functional JSON: ") + e.what());
  }
}

std::string to_json(const UltraFunctional& T) {
  json lw = json::array();
  for (const auto& q : T.space.log_weights) lw.push_back(detail::rational_to_json(q));
  json values = json::array();
  for (const auto& v : T.values) values.push_back(detail::lc_to_json(v));
  const auto nv = T.norm_valuation();
  json j{{"dim", T.space.dim()},
         {"log_weights", lw},
         {"domain", T.domain},
         {"values", values},
         {"norm_valuation", nv.is_infinite() ? json("inf") : detail::rational_to_json(nv.value())},
         {"norm", T.norm()}};
  return j.dump(2) + "\n";
}

}  // namespace asymptotica::hb
