#pragma once

#include <functional>

// The base bump phi0(x) = exp(-1/(1-x^2)) / c on (-1, 1), zero elsewhere,
// normalized to unit mass.
namespace asymptotica {

double bump_normalization();  // c
double bump0(double x);
double bump0_derivative(double x, int k);
// Integral of phi0 over (-inf, x].
double bump0_antiderivative(double x);
int max_bump_derivative();

// C_k = sup |phi0^(k)|, by sampling (4096 points plus one refinement pass).
double bump_derivative_sup(int k);

// Dense-grid supremum of |f| on [lo, hi] with one refinement pass around the
// best sample. A heuristic, not a rigorous bound.
double sampled_sup(const std::function<double(double)>& f, double lo, double hi, int points = 4096);

}  // namespace asymptotica
