#include "asymptotica/ultra_hb.hpp"

#include "asymptotica/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace asymptotica::hb {

using lc::LCNumber;
using lc::Valuation;

double DiagonalSpace::weight(int i) const { return std::exp(-to_double(log_weights.at(static_cast<std::size_t>(i)))); }

DiagonalSpace DiagonalSpace::from_weights(const std::vector<double>& weights) {
  DiagonalSpace V;
  for (double w : weights) {
    if (!(w > 0) || !std::isfinite(w)) throw DomainMismatch("weights must be positive and finite");
    V.log_weights.push_back(w == 1.0 ? Rational(0) : rational_from_double(-std::log(w)));
  }
  return V;
}

namespace {

double norm_of(const Valuation& v) { return v.is_infinite() ? 0.0 : std::exp(-to_double(v.value())); }

Valuation shift(const Valuation& v, const Rational& q) { return v.is_infinite() ? v : Valuation(v.value() + q); }

}  // namespace

Valuation norm_valuation(const DiagonalSpace& V, const Vector& x) {
  if (static_cast<int>(x.size()) != V.dim()) throw DomainMismatch("vector size does not match the space");
  Valuation best = Valuation::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) best = std::min(best, shift(x[i].valuation(), V.log_weights[i]));
  return best;
}

double norm(const DiagonalSpace& V, const Vector& x) { return norm_of(norm_valuation(V, x)); }

Valuation UltraFunctional::norm_valuation() const {
  Valuation best = Valuation::infinity();
  for (std::size_t k = 0; k < domain.size(); ++k) {
    best = std::min(best, shift(values[k].valuation(), -space.log_weights[static_cast<std::size_t>(domain[k])]));
  }
  return best;
}

double UltraFunctional::norm() const { return norm_of(norm_valuation()); }

LCNumber UltraFunctional::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != space.dim()) throw DomainMismatch("vector size does not match the space");
  std::vector<bool> in(x.size(), false);
  for (int i : domain) in[static_cast<std::size_t>(i)] = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!in[i] && !x[i].is_zero()) throw DomainMismatch("vector leaves the functional's domain");
  }
  LCNumber total;
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto& xi = x[static_cast<std::size_t>(domain[k])];
    if (!xi.is_zero()) total += xi * values[k];
  }
  return total;
}

UltraFunctional UltraFunctional::restrict_to(const std::vector<int>& indices) const {
  Vector v;
  for (int i : indices) {
    auto it = std::find(domain.begin(), domain.end(), i);
    if (it == domain.end()) throw DomainMismatch("restriction leaves the domain");
    v.push_back(values[static_cast<std::size_t>(it - domain.begin())]);
  }
  return make_functional(space, indices, std::move(v));
}

UltraFunctional make_functional(DiagonalSpace V, std::vector<int> domain, Vector values) {
  if (V.dim() < 1) throw DomainMismatch("space dimension must be positive");
  if (domain.size() != values.size()) throw DomainMismatch("domain and values differ in length");
  std::vector<std::size_t> order(domain.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
  UltraFunctional T{std::move(V), {}, {}};
  for (std::size_t k : order) {
    const int i = domain[k];
    if (i < 0 || i >= T.space.dim()) throw DomainMismatch("basis index " + std::to_string(i) + " out of range");
    if (!T.domain.empty() && T.domain.back() == i) throw DomainMismatch("duplicate basis index");
    T.domain.push_back(i);
    T.values.push_back(values[k]);
  }
  return T;
}

double functional_norm(const UltraFunctional& T) { return T.norm(); }

// ---------------------------------------------------------------- random

LCNumber random_lc(std::mt19937_64& rng, int vmin, int vmax) {
  std::uniform_int_distribution<int> nterms(1, 3), den(1, 3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::bernoulli_distribution complex_coef(0.3);
  const int q = den(rng);
  std::uniform_int_distribution<int> num(vmin * q, vmax * q);
  std::set<Rational> exps;
  const int k = nterms(rng);
  while (static_cast<int>(exps.size()) < k) {
    // Later terms sit above the leading exponent.
    Rational e(num(rng), q);
    if (!exps.empty()) e = *exps.begin() + Rational(std::uniform_int_distribution<int>(1, 4)(rng), q);
    exps.insert(e);
  }
  std::vector<lc::Term> terms;
  for (const auto& e : exps) {
    double re = coef(rng);
    if (std::abs(re) < 0.05) re += 0.5;
    const double im = complex_coef(rng) ? coef(rng) : 0.0;
    terms.push_back({e, {re, im}});
  }
  return LCNumber::from_terms(std::move(terms), lc::default_truncation());
}

Vector random_vector(std::mt19937_64& rng, int dim, int vmin, int vmax, double zero_probability) {
  std::bernoulli_distribution zero(zero_probability);
  Vector x;
  for (int i = 0; i < dim; ++i) x.push_back(zero(rng) ? LCNumber() : random_lc(rng, vmin, vmax));
  return x;
}

UltraFunctional random_functional(std::uint64_t seed, int k) {
  std::mt19937_64 rng(seed);
  static const Rational lambdas[] = {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
  std::uniform_int_distribution<int> pick(0, 4);
  DiagonalSpace V;
  for (int i = 0; i < k; ++i) V.log_weights.push_back(lambdas[pick(rng)]);
  std::vector<int> domain;
  std::bernoulli_distribution keep(0.5);
  for (int i = 0; i < k; ++i) {
    if (keep(rng)) domain.push_back(i);
  }
  if (domain.empty()) domain.push_back(std::uniform_int_distribution<int>(0, k - 1)(rng));
  Vector values;
  std::bernoulli_distribution zero(0.1);
  for (std::size_t i = 0; i < domain.size(); ++i) values.push_back(zero(rng) ? LCNumber() : random_lc(rng, -3, 3));
  return make_functional(std::move(V), std::move(domain), std::move(values));
}

// ------------------------------------------------------------- extension

bool in_ball(const LCNumber& y, const LCNumber& c, const Valuation& r) { return (y - c).valuation() >= r; }

BallRelation ball_relation(const LCNumber& c1, const Valuation& r1, const LCNumber& c2, const Valuation& r2) {
  // Ultrametric: if the centers are within the larger radius, the smaller
  // ball lies inside the larger one; otherwise they are disjoint.
  const Valuation big = std::min(r1, r2);
  return (c1 - c2).valuation() >= big ? BallRelation::nested : BallRelation::disjoint;
}

namespace {

// Vectors of U with coordinates in {0, +-1, +-rho, +-rho^-1} on the domain.
std::vector<Vector> combinatorial_set(const UltraFunctional& T) {
  const std::vector<LCNumber> palette{LCNumber(),
                                      LCNumber(1.0),
                                      LCNumber(-1.0),
                                      LCNumber::rho(),
                                      -LCNumber::rho(),
                                      LCNumber::monomial(1.0, Rational(-1)),
                                      LCNumber::monomial(-1.0, Rational(-1))};
  // Full products for small domains, otherwise one or two non-zero slots.
  std::vector<Vector> out;
  const std::size_t m = T.domain.size();
  const std::size_t k = static_cast<std::size_t>(T.space.dim());
  if (m <= 3) {
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
      Vector x(k);
      for (std::size_t a = 0; a < m; ++a) x[static_cast<std::size_t>(T.domain[a])] = palette[idx[a]];
      out.push_back(std::move(x));
      std::size_t a = 0;
      while (a < m && ++idx[a] == palette.size()) idx[a++] = 0;
      if (a == m) break;
    }
    return out;
  }
  out.push_back(Vector(k));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t p = 1; p < palette.size(); ++p) {
      Vector x(k);
      x[static_cast<std::size_t>(T.domain[a])] = palette[p];
      out.push_back(x);
      for (std::size_t b = a + 1; b < m; ++b) {
        for (std::size_t q = 1; q < palette.size(); ++q) {
          Vector y = x;
          y[static_cast<std::size_t>(T.domain[b])] = palette[q];
          out.push_back(std::move(y));
        }
      }
    }
  }
  return out;
}

// Valuation of R(x) = ||T|| ||x - e_j||.
Valuation radius_valuation(const UltraFunctional& T, const Vector& x, int j) {
  Vector d = x;
  d[static_cast<std::size_t>(j)] -= LCNumber(1.0);
  return T.norm_valuation() + norm_valuation(T.space, d);
}

}  // namespace

UltraFunctional extend_one_step(const UltraFunctional& T, int j, const ExtendOptions& opts) {
  if (j < 0 || j >= T.space.dim()) throw DomainMismatch("extension index out of range");
  if (std::find(T.domain.begin(), T.domain.end(), j) != T.domain.end()) return T;

  const auto xs = combinatorial_set(T);
  std::vector<Valuation> radii;
  std::vector<LCNumber> centers;
  for (const auto& x : xs) {
    radii.push_back(radius_valuation(T, x, j));
    centers.push_back(T.apply(x));
  }

  // Random probes of U, checked after the finite set.
  std::mt19937_64 rng(opts.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(j + 1)));
  std::vector<Valuation> probe_radii;
  std::vector<LCNumber> probe_centers;
  for (int p = 0; p < opts.probes; ++p) {
    Vector x(static_cast<std::size_t>(T.space.dim()));
    Vector r = random_vector(rng, static_cast<int>(T.domain.size()), -3, 3);
    for (std::size_t a = 0; a < T.domain.size(); ++a) x[static_cast<std::size_t>(T.domain[a])] = r[a];
    probe_radii.push_back(radius_valuation(T, x, j));
    probe_centers.push_back(T.apply(x));
  }

  // Palette: centers by increasing radius (decreasing radius valuation).
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });
  std::vector<LCNumber> palette;
  for (std::size_t i : order) palette.push_back(centers[i]);
  const Rational& lj = T.space.log_weights[static_cast<std::size_t>(j)];
  for (std::size_t k = 0; k < T.domain.size(); ++k) {
    const Rational& li = T.space.log_weights[static_cast<std::size_t>(T.domain[k])];
    palette.push_back(T.values[k] * LCNumber::monomial(1.0, lj - li));
  }

  const Valuation tnorm = T.norm_valuation();
  for (const auto& y0 : palette) {
    // ||S|| = min(||T||, |y0| / w_j) in valuations.
    if (std::min(tnorm, shift(y0.valuation(), -lj)) != tnorm) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < centers.size(); ++i) ok = in_ball(y0, centers[i], radii[i]);
    for (std::size_t i = 0; ok && i < probe_centers.size(); ++i) ok = in_ball(y0, probe_centers[i], probe_radii[i]);
    if (!ok) continue;
    std::vector<int> domain = T.domain;
    Vector values = T.values;
    domain.push_back(j);
    values.push_back(y0);
    return make_functional(T.space, std::move(domain), std::move(values));
  }
  throw NoCandidate("no palette value extends the functional to e_" + std::to_string(j) + " with equal norm");
}

UltraFunctional extend_full(const UltraFunctional& T, const ExtendOptions& opts) {
  UltraFunctional S = T;
  for (int j = 0; j < T.space.dim(); ++j) S = extend_one_step(S, j, opts);
  return S;
}

bool ExtensionReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.passed; });
}

ExtensionReport verify_extension(const UltraFunctional& T, const UltraFunctional& M, int samples,
                                 std::uint64_t seed) {
  ExtensionReport rep;
  bool agree = T.space.log_weights == M.space.log_weights;
  std::string detail = agree ? "M(e_i) == T(e_i) term by term on U" : "spaces differ";
  for (std::size_t k = 0; agree && k < T.domain.size(); ++k) {
    auto it = std::find(M.domain.begin(), M.domain.end(), T.domain[k]);
    if (it == M.domain.end() || !(M.values[static_cast<std::size_t>(it - M.domain.begin())] == T.values[k])) {
      agree = false;
      detail = "differs at e_" + std::to_string(T.domain[k]);
    }
  }
  rep.entries.push_back({"agrees_on_U", agree, detail});

  const Valuation nt = T.norm_valuation(), nm = M.norm_valuation();
  rep.entries.push_back({"norm_equal", nt == nm, "v(||T||) = " + nt.str() + ", v(||M||) = " + nm.str()});

  if (samples > 0) {
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int s = 0; s < samples; ++s) {
      Vector x = random_vector(rng, M.space.dim(), -3, 3);
      if (!M.on_whole_space()) {
        for (int i = 0; i < M.space.dim(); ++i) {
          if (std::find(M.domain.begin(), M.domain.end(), i) == M.domain.end()) x[static_cast<std::size_t>(i)] = {};
        }
      }
      if (M.apply(x).valuation() < nt + norm_valuation(M.space, x)) ++bad;
    }
    rep.entries.push_back({"bound", bad == 0,
                           std::to_string(samples - bad) + "/" + std::to_string(samples) +
                               " samples satisfy |M(x)|_v <= ||T|| ||x||"});
  }
  return rep;
}

}  // namespace asymptotica::hb
