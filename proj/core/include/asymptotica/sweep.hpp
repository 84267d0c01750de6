#pragma once

#include "asymptotica/gfunc.hpp"
#include "asymptotica/pairing.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

// Scale sweeps of pairings and the verdicts read off their log-log slopes.
// "Negligible" means a fitted slope of at least p_max (4 by default), a finite
// stand-in for "below R^p for every p". Verdicts over a test-function catalog
// hold on that catalog only.
namespace asymptotica::sweep {

enum class Precision { standard, high };

struct Level {
  Rational eps;
  double epsilon;
  std::complex<double> value;
  double abs_err;  // |value - limit|, or |value| when no limit is subtracted
};

struct Fit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // RMS of the natural-log residuals
  int points = 0;
};

struct PairingSweep {
  std::string tau;
  std::vector<Level> levels;     // decreasing eps
  std::optional<double> limit;   // subtracted from the values when set
  bool below_floor = false;      // every fitted abs_err under the zero floor
  std::optional<Fit> fit;        // unset when below_floor
};

// 2^-first, ..., 2^-last
std::vector<Rational> dyadic_scales(int first, int last);

struct SweepOptions {
  int n = 3;
  std::vector<Rational> scales = dyadic_scales(3, 12);
  int fit_last = 6;  // fit the last k levels; 0 fits all
  Precision precision = Precision::standard;
  bool subtract_limit = true;
  pairing::PairingOptions pairing;
};

// Values at or below this count as zero: 1e-12 in double, 1e-43 at 60 digits
// (100 times the quadrature tolerance of each path).
double zero_floor(Precision p);

// Needs at least 4 scales spanning 2 decades (IllConditionedFit otherwise).
PairingSweep run(const gfunc::GenFunction& g, const pairing::TestFunction& tau, const SweepOptions& opts = {});

// Least squares of log y against log x over points with y > 0.
Fit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

// Fitted slope; throws IllConditionedFit when the residual exceeds 0.2.
double estimate_valuation(const PairingSweep& s);

struct Classification {
  bool zero = false;  // all values below the floor
  bool moderate = false;
  bool negligible = false;
  double slope = 0;
  double residual = 0;
};
Classification classify(const PairingSweep& s, double m_max = 10, double p_max = 4);

enum class Verdict { holds, fails, inconclusive };
const char* to_string(Verdict v);

struct TauSlope {
  std::string tau;
  bool zero = false;
  double slope = 0;
  double residual = 0;
  double last_abs = 0;
};

struct CatalogVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::vector<TauSlope> per_tau;
};

struct VerdictOptions {
  int n = 4;
  std::vector<Rational> scales = dyadic_scales(5, 12);
  Precision precision = Precision::high;
  double p_max = 4;
};

// Every pairing of f - g is negligible up to p_max.
CatalogVerdict weak_equal(const gfunc::GenFunction& f, const gfunc::GenFunction& g,
                          const std::vector<pairing::TestFunction>& taus, VerdictOptions opts = {});
// Every pairing of f - g tends to 0: positive slope and decreasing values.
// Defaults to the double path at level 3.
CatalogVerdict associated(const gfunc::GenFunction& f, const gfunc::GenFunction& g,
                          const std::vector<pairing::TestFunction>& taus,
                          VerdictOptions opts = {3, dyadic_scales(5, 12), Precision::standard, 4});

}  // namespace asymptotica::sweep
