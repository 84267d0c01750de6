#pragma once

#include "asymptotica/gfunc.hpp"
#include "asymptotica/rational.hpp"
#include "asymptotica/symexpr.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

// Pairings (g_phi | tau) = integral of g_phi tau over supp tau, where phi is
// the level-n mollifier moment_killer(n, 9n) rescaled to radius eps.
namespace asymptotica::pairing {

// A test function given by a formula, supported in [lo, hi].
struct TestFunction {
  std::string name;
  sym::Expr f;
  double lo = -1;
  double hi = 1;
};

// bump:  bump(x - 1/5) on [-0.8, 1.2]   (the default)
// wide:  bump((x - 1/4)/2) on [-1.75, 2.25]
// poly:  (1 + x + x^2) bump(5x/4 - 1/4) on [-0.6, 1]
const std::vector<TestFunction>& tau_catalog();
const TestFunction& default_tau();
// A catalog name, or "formula@lo:hi".
TestFunction parse_tau(const std::string& spec);

struct PairingOptions {
  double abs_tol = 1e-10;
  // Also accept a relative error below rel_tol, for pairings of size 1e3 and
  // more where 1e-10 absolute sits at the rounding level.
  double rel_tol = 1e-13;
  // Absolute tolerance of the 60-digit path.
  double high_abs_tol = 1e-45;
  int max_cells = 20000;
};

std::complex<double> pairing(const gfunc::GenFunction& g, const TestFunction& tau, const Rational& eps, int n,
                             const PairingOptions& opts = {});

// The eps -> 0 limit where it is known in closed form:
//   regular factors r (smooth, kernel, fn, order-0 cut-offs) only: int r tau;
//   H_c^p r: int over x > c of r tau;
//   H_c^p delta_c r: r(c) tau(c) / (p + 1);
//   delta_c^(k) r: (-1)^k (r tau)^(k)(c);
// composed singular factors map c through the inverse diffeomorphism.
std::optional<double> limit(const gfunc::GenFunction& g, const TestFunction& tau, const PairingOptions& opts = {});

// Pointwise value of d^alpha g_phi at x.
double net_value(const gfunc::GenFunction& g, const Rational& eps, int n, double x, int alpha = 0);
// Sampled sup of |d^alpha g_phi| on [lo, hi]: a 4096-point grid, extra points
// across every singular support, and one refinement pass.
double net_sup(const gfunc::GenFunction& g, double lo, double hi, int alpha, const Rational& eps, int n);
// C_{box,phi}(x).
double cutoff_value(const gfunc::Interval& box, const Rational& eps, int n, double x);

}  // namespace asymptotica::pairing
