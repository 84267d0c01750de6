#pragma once

#include "asymptotica/mollifier.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace asymptotica::mollifier {

// The file holds the expression tree with exact rational parameters, so a
// reloaded mollifier evaluates exactly like the original.
//   {"dim":1,"level":2,"radius":0.01,"meta":{...},
//    "expr":{"kind":"epsilon_scale","eps":[1,100],"child":{...}}}
std::string to_json(const Mollifier& phi);
Mollifier from_json(std::string_view text);

// k points per axis on [-R, R]^d; columns x1..xd,value.
void write_samples_csv(std::ostream& out, const Mollifier& phi, int k);

}  // namespace asymptotica::mollifier
