#include "asymptotica/lc_io.hpp"

#include "json_support.hpp"

namespace asymptotica::lc {

std::string to_json(const LCNumber& a) { return detail::lc_to_json(a).dump(); }

LCNumber from_json(std::string_view json) {
  try {
    return detail::lc_from_json(nlohmann::json::parse(json));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed LC number JSON: ") + e.what());
  }
}

}  // namespace asymptotica::lc
