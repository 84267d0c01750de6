#pragma once

#include "asymptotica/lc_number.hpp"

#include <span>
#include <vector>

namespace asymptotica::lc {

// Coefficients are ordered by increasing degree: coeffs[i] multiplies x^i.
LCNumber evaluate_polynomial(std::span<const LCNumber> coeffs, const LCNumber& x);
std::vector<LCNumber> derivative_coefficients(std::span<const LCNumber> coeffs);

// One edge of the lower convex hull of {(i, v(c_i))}. The polynomial has
// (end - start) roots of valuation -slope.
struct NewtonSegment {
  int start;
  int end;
  Rational slope;
};
std::vector<NewtonSegment> newton_polygon(std::span<const LCNumber> coeffs);

// All roots (with multiplicity) of sum_i coeffs[i] x^i, degree >= 1.
// Initial exponents come from the Newton polygon; simple branches are refined
// by Newton iteration in series arithmetic; clusters of equal leading
// coefficients are separated by recursive substitution x = rho^mu (a + y).
// Leading coefficients within kClusterTolerance (relative) are treated as one
// cluster. Throws Unresolvable when a branch fails to converge.
inline constexpr double kClusterTolerance = 1e-4;
std::vector<LCNumber> poly_roots(std::span<const LCNumber> coeffs);

}  // namespace asymptotica::lc
