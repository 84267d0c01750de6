#pragma once

#include "asymptotica/mollifier.hpp"

#include <string>
#include <vector>

namespace asymptotica::mollifier {

struct CertEntry {
  std::string condition;  // evenness, realness, radius, mass, moments, l1, derivatives
  bool passed;
  double measured;
  double bound;           // tolerance or upper bound the measurement is held to
  std::string detail;
};

struct CertReport {
  int level;
  std::vector<CertEntry> entries;
  bool passed() const;
};

struct CertOptions {
  double quad_tol = 1e-13;        // absolute, in the normalized variable
  double moment_tol = 1e-8;
  double mass_tol = 1e-10;
  double l1_slack = 1e-6;
  int sup_points = 4096;          // per axis and per dilation scale
};

// Checks the seven membership conditions of level n: evenness, realness,
// radius <= 1/n, unit mass, vanishing moments for 1 <= |alpha| <= n,
// L1 <= 1 + 1/n, and sup |d^alpha phi| <= R^(-2(|alpha| + d)) for |alpha| <= n.
// Sup bounds are sampled, so that entry is a heuristic certificate.
CertReport certify(const Mollifier& phi, int n, const CertOptions& options = {});

// Integral of x^alpha phi over R^d (alpha empty: the mass).
double moment(const Mollifier& phi, const std::vector<int>& alpha, double quad_tol = 1e-13);
double l1_norm(const Mollifier& phi, double quad_tol = 1e-13);
// Natural log of the sampled sup |d^alpha phi|; -inf when phi vanishes.
double log_derivative_sup(const Mollifier& phi, const std::vector<int>& alpha, int points = 4096);

}  // namespace asymptotica::mollifier
