#pragma once

#include "asymptotica/ultra_hb.hpp"

#include <string>
#include <string_view>

namespace asymptotica::hb {

// {"weights":[1, 0.5]} or {"log_weights":[[0,1],[1,2]]} (w = exp(-lambda)).
DiagonalSpace space_from_json(std::string_view text);
// {"domain":[0,2],"values":[v0, v2]}; each value is an LC JSON object or an
// LC expression string such as "1 + rho".
UltraFunctional functional_from_json(std::string_view text, const DiagonalSpace& V);
// Includes the log-weights, the norm valuation ("inf" for zero) and the norm.
std::string to_json(const UltraFunctional& T);

}  // namespace asymptotica::hb
