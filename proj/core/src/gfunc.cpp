#include "asymptotica/gfunc.hpp"

#include "asymptotica/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace asymptotica::gfunc {

namespace {

std::string num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string interval_string(const Interval& I) { return "(" + num(I.lo) + ", " + num(I.hi) + ")"; }

Rational rational_value(double v) { return rational_from_double(v); }

}  // namespace

// ------------------------------------------------------------------ Diffeo

double Diffeo::operator()(double x) const { return sym::eval(map, x); }
double Diffeo::derivative(double x) const { return sym::eval(dmap, x); }

bool Diffeo::increasing() const {
  double x = 0;
  if (!domain.contains(0)) {
    x = std::isfinite(domain.lo) && std::isfinite(domain.hi) ? (domain.lo + domain.hi) / 2
        : std::isfinite(domain.lo)                         ? domain.lo + 1
                                                           : domain.hi - 1;
  }
  return derivative(x) > 0;
}

namespace {

// Finite stand-in for an infinite domain end when probing the image.
constexpr double kFar = 1e12;

double probe_end(double v, int side) { return std::isfinite(v) ? v : side * kFar; }

}  // namespace

Interval Diffeo::image() const {
  double a = (*this)(probe_end(domain.lo, -1));
  double b = (*this)(probe_end(domain.hi, 1));
  if (!increasing()) std::swap(a, b);
  auto widen = [](double v, double lim) { return std::isfinite(v) && std::abs(v) < lim ? v : std::copysign(kInf, v); };
  Interval I{a, b};
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi)) {
    // An unbounded domain: treat images beyond 1e9 as unbounded.
    I.lo = widen(I.lo, 1e9);
    I.hi = widen(I.hi, 1e9);
  }
  return I;
}

std::optional<double> Diffeo::inverse(double y) const {
  const bool inc = increasing();
  double lo = probe_end(domain.lo, -1);
  double hi = probe_end(domain.hi, 1);
  double flo = (*this)(lo) - y;
  double fhi = (*this)(hi) - y;
  if (!inc) {
    flo = -flo;
    fhi = -fhi;
  }
  if (flo > 0 || fhi < 0) return std::nullopt;
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  for (int it = 0; it < 400; ++it) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    double fm = (*this)(mid) - y;
    if (!inc) fm = -fm;
    if (fm == 0) return mid;
    (fm < 0 ? lo : hi) = mid;
  }
  return lo + (hi - lo) / 2;
}

std::string Diffeo::to_string() const {
  std::string s = sym::to_string(map);
  if (!domain.full()) s += " on " + interval_string(domain);
  return s;
}

Diffeo make_diffeo(const sym::Expr& map, Interval domain) {
  if (!(domain.lo < domain.hi)) throw DomainMismatch("empty diffeomorphism domain");
  Diffeo psi{map, sym::derivative(map), domain};
  const double lo = std::isfinite(domain.lo) ? domain.lo : std::min(-10.0, domain.hi - 10);
  const double hi = std::isfinite(domain.hi) ? domain.hi : std::max(10.0, domain.lo + 10);
  int sign = 0;
  constexpr int kSamples = 2001;
  for (int i = 1; i < kSamples; ++i) {
    const double x = lo + (hi - lo) * i / kSamples;
    const double d = psi.derivative(x);
    const int s = d > 0 ? 1 : d < 0 ? -1 : 0;
    if (s == 0 || !std::isfinite(d) || (sign != 0 && s != sign)) {
      throw DomainMismatch("map " + sym::to_string(map) + " is not strictly monotone on " + interval_string(domain));
    }
    sign = s;
  }
  return psi;
}

// ------------------------------------------------------------------ keys

std::string leaf_key(const Leaf& leaf) {
  const std::string c = asymptotica::to_string(leaf.center);
  auto order_suffix = [&](int k) { return k == 0 ? std::string() : "^(" + std::to_string(k) + ")"; };
  switch (leaf.kind) {
    case LeafKind::point:
      if (leaf.order < 0) return "H(" + c + ")";
      if (leaf.order == 0) return "delta(" + c + ")";
      return "delta^(" + std::to_string(leaf.order) + ")(" + c + ")";
    case LeafKind::smooth: return "smooth(" + sym::to_string(leaf.f) + ")";
    case LeafKind::kernel: {
      std::string s = "kernel(" + sym::to_string(leaf.f);
      if (!leaf.box.full()) s += " on " + interval_string(leaf.box);
      return s + ")" + order_suffix(leaf.order);
    }
    case LeafKind::fn: return "fn(" + sym::to_string(leaf.f) + ")";
    case LeafKind::cutoff: return "cutoff" + interval_string(leaf.box) + order_suffix(leaf.order);
  }
  return "?";
}

std::string factor_key(const Factor& f) {
  std::string s = leaf_key(f.leaf);
  if (f.psi) s = "compose(" + s + ", " + f.psi->to_string() + ")";
  return s;
}

// ------------------------------------------------------------ normal form

namespace {

std::string monomial_key(const Monomial& m) {
  std::string s;
  for (const auto& f : m.factors) {
    if (!s.empty()) s += "*";
    s += factor_key(f);
    if (f.power != 1) s += "^" + std::to_string(f.power);
  }
  return s;
}

// Sorts and merges factors, folds constant fn factors into the coefficient.
// Returns false when the monomial vanishes.
bool normalize(Monomial& m) {
  std::map<std::string, Factor> merged;
  for (auto& f : m.factors) {
    if (f.power == 0) continue;
    if (f.leaf.kind == LeafKind::fn && f.leaf.f.is_constant()) {
      Rational q(1);
      for (int i = 0; i < f.power; ++i) q *= f.leaf.f.node().value;
      m.coef *= q;
      continue;
    }
    auto key = factor_key(f);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(f));
    } else {
      it->second.power += f.power;
    }
  }
  m.factors.clear();
  for (auto& [k, f] : merged) m.factors.push_back(std::move(f));
  return m.coef != 0;
}

std::vector<Monomial> normalize(std::vector<Monomial> terms) {
  std::map<std::string, Monomial> merged;
  for (auto& m : terms) {
    if (!normalize(m)) continue;
    auto key = monomial_key(m);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(m));
    } else {
      it->second.coef += m.coef;
    }
  }
  std::vector<Monomial> out;
  for (auto& [k, m] : merged) {
    if (m.coef != 0) out.push_back(std::move(m));
  }
  return out;
}

GenFunction single(Leaf leaf) {
  Monomial m;
  m.factors.push_back({std::move(leaf), std::nullopt, 1});
  return GenFunction({std::move(m)}, {});
}

void require_same_domain(const GenFunction& a, const GenFunction& b) {
  if (!(a.domain() == b.domain())) {
    throw DomainMismatch("domains differ: " + interval_string(a.domain()) + " vs " + interval_string(b.domain()));
  }
}

}  // namespace

GenFunction::GenFunction(std::vector<Monomial> terms, Interval domain)
    : terms_(normalize(std::move(terms))), domain_(domain) {}

std::string GenFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& m : terms_) {
    Rational c = m.coef;
    if (!first) {
      s += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    } else if (c < 0 && !m.factors.empty()) {
      s += "-";
      c = -c;
    }
    first = false;
    const std::string body = monomial_key(m);
    if (body.empty()) {
      s += asymptotica::to_string(c);
    } else if (c == 1) {
      s += body;
    } else {
      s += asymptotica::to_string(c) + "*" + body;
    }
  }
  return s;
}

// ---------------------------------------------------------------- catalog

GenFunction heaviside(const Rational& c) { return single({LeafKind::point, c, -1, {}, {}}); }

GenFunction delta(const Rational& c, int order) {
  if (order < 0) throw DomainMismatch("delta derivative order must be >= 0");
  return single({LeafKind::point, c, order, {}, {}});
}

GenFunction embed_smooth(const sym::Expr& f) {
  if (f.is_constant()) return constant(f.node().value);
  return single({LeafKind::smooth, Rational(0), 0, f, {}});
}

GenFunction embed_kernel(const sym::Expr& f, Interval domain) {
  GenFunction g = single({LeafKind::kernel, Rational(0), 0, f, domain});
  return GenFunction(g.terms(), domain);
}

GenFunction sigma(const sym::Expr& f) { return single({LeafKind::fn, Rational(0), 0, f, {}}); }

GenFunction constant(const Rational& q) {
  Monomial m;
  m.coef = q;
  return GenFunction({std::move(m)}, {});
}

GenFunction cutoff(Interval box) {
  if (!(box.lo < box.hi)) throw DomainMismatch("empty cut-off box");
  return single({LeafKind::cutoff, Rational(0), 0, {}, box});
}

// ---------------------------------------------------------------- algebra

GenFunction operator+(const GenFunction& a, const GenFunction& b) {
  require_same_domain(a, b);
  auto terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return GenFunction(std::move(terms), a.domain());
}

GenFunction operator-(const GenFunction& a) { return Rational(-1) * a; }

GenFunction operator-(const GenFunction& a, const GenFunction& b) { return a + (-b); }

GenFunction operator*(const Rational& q, const GenFunction& a) {
  auto terms = a.terms();
  for (auto& m : terms) m.coef *= q;
  return GenFunction(std::move(terms), a.domain());
}

GenFunction operator*(const GenFunction& a, const GenFunction& b) {
  require_same_domain(a, b);
  std::vector<Monomial> terms;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      Monomial m{x.coef * y.coef, x.factors};
      m.factors.insert(m.factors.end(), y.factors.begin(), y.factors.end());
      terms.push_back(std::move(m));
    }
  }
  return GenFunction(std::move(terms), a.domain());
}

GenFunction pow(const GenFunction& a, int k) {
  if (k < 0) throw DomainMismatch("negative powers are not in the algebra");
  GenFunction r = restrict_to(constant(Rational(1)), a.domain());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

GenFunction restrict_to(const GenFunction& a, Interval domain) {
  if (domain.lo < a.domain().lo || domain.hi > a.domain().hi) {
    throw DomainMismatch("cannot widen " + interval_string(a.domain()) + " to " + interval_string(domain));
  }
  return GenFunction(a.terms(), domain);
}

namespace {

// Precomposes one factor with psi; fn leaves are substituted symbolically.
Factor compose_factor(const Factor& f, const Diffeo& psi) {
  Factor out = f;
  if (f.leaf.kind == LeafKind::fn) {
    out.leaf.f = sym::substitute(f.leaf.f, psi.map);
    out.psi.reset();
    return out;
  }
  if (f.psi) {
    out.psi = Diffeo{sym::substitute(f.psi->map, psi.map), {}, psi.domain};
    out.psi->dmap = sym::derivative(out.psi->map);
  } else {
    out.psi = psi;
  }
  return out;
}

// Derivative of a single leaf (power 1, no composition), as monomials.
std::vector<Monomial> derive_leaf(const Leaf& leaf) {
  Leaf d = leaf;
  switch (leaf.kind) {
    case LeafKind::point:
    case LeafKind::kernel:
    case LeafKind::cutoff: d.order += 1; break;
    case LeafKind::smooth:
    case LeafKind::fn: {
      d.f = sym::derivative(leaf.f);
      if (d.f.is_constant()) {
        // A constant c embeds as the constant net c (unit mass).
        Monomial m;
        m.coef = d.f.node().value;
        return {m};
      }
      break;
    }
  }
  Monomial m;
  m.factors.push_back({d, std::nullopt, 1});
  return {m};
}

std::vector<Monomial> derive_factor(const Factor& f) {
  Leaf base = f.leaf;
  std::vector<Monomial> d = derive_leaf(base);
  if (!f.psi) return d;
  for (auto& m : d) {
    for (auto& g : m.factors) g = compose_factor(g, *f.psi);
    m.factors.push_back({Leaf{LeafKind::fn, Rational(0), 0, f.psi->dmap, {}}, std::nullopt, 1});
  }
  return d;
}

}  // namespace

GenFunction derive(const GenFunction& a, int order) {
  if (order < 0) throw DomainMismatch("negative derivative order");
  GenFunction g = a;
  for (int step = 0; step < order; ++step) {
    std::vector<Monomial> out;
    for (const auto& m : g.terms()) {
      for (std::size_t i = 0; i < m.factors.size(); ++i) {
        const Factor& f = m.factors[i];
        Factor single_f = f;
        single_f.power = 1;
        for (auto& dm : derive_factor(single_f)) {
          Monomial t;
          t.coef = m.coef * f.power * dm.coef;
          for (std::size_t j = 0; j < m.factors.size(); ++j) {
            Factor other = m.factors[j];
            if (j == i) other.power -= 1;
            if (other.power > 0) t.factors.push_back(std::move(other));
          }
          t.factors.insert(t.factors.end(), dm.factors.begin(), dm.factors.end());
          out.push_back(std::move(t));
        }
      }
    }
    g = GenFunction(std::move(out), g.domain());
  }
  return g;
}

GenFunction compose_diffeo(const GenFunction& g, const Diffeo& psi) {
  const Interval im = psi.image();
  if (im.lo < g.domain().lo || im.hi > g.domain().hi) {
    throw DomainMismatch("image " + interval_string(im) + " of " + psi.to_string() + " leaves the domain " +
                         interval_string(g.domain()));
  }
  std::vector<Monomial> terms;
  for (const auto& m : g.terms()) {
    Monomial t{m.coef, {}};
    for (const auto& f : m.factors) t.factors.push_back(compose_factor(f, psi));
    terms.push_back(std::move(t));
  }
  return GenFunction(std::move(terms), psi.domain);
}

namespace {

// Each term of a distribution argument: coef * leaf, no composition.
const Leaf& single_leaf(const Monomial& m, const char* op) {
  if (m.factors.size() != 1 || m.factors[0].power != 1 || m.factors[0].psi) {
    throw DomainMismatch(std::string(op) + " needs a linear combination of catalog leaves");
  }
  return m.factors[0].leaf;
}

}  // namespace

GenFunction pullback(const GenFunction& t, const Diffeo& psi) {
  const Interval im = psi.image();
  if (im.lo < t.domain().lo || im.hi > t.domain().hi) {
    throw DomainMismatch("image of " + psi.to_string() + " leaves the domain " + interval_string(t.domain()));
  }
  std::vector<Monomial> out;
  for (const auto& m : t.terms()) {
    if (m.factors.empty()) {
      out.push_back(m);
      continue;
    }
    const Leaf& leaf = single_leaf(m, "pullback");
    const double c = to_double(leaf.center);
    switch (leaf.kind) {
      case LeafKind::point: {
        if (leaf.order > 0) throw DomainMismatch("pullback of delta derivatives is not supported");
        const auto x0 = psi.inverse(c);
        if (leaf.order == 0) {
          if (!x0) break;  // no preimage: delta o psi vanishes
          Monomial d;
          d.coef = m.coef * rational_value(1.0 / std::abs(psi.derivative(*x0)));
          d.factors.push_back({Leaf{LeafKind::point, rational_value(*x0), 0, {}, {}}, std::nullopt, 1});
          out.push_back(std::move(d));
          break;
        }
        if (!x0) {
          // H o psi is constant on the domain.
          if (im.lo >= c) out.push_back(Monomial{m.coef, {}});
          break;
        }
        Monomial h{m.coef, {}};
        h.factors.push_back({Leaf{LeafKind::point, rational_value(*x0), -1, {}, {}}, std::nullopt, 1});
        if (psi.increasing()) {
          out.push_back(std::move(h));
        } else {
          // H(psi(x) - c) = 1 - H(x - x0) for decreasing psi.
          out.push_back(Monomial{m.coef, {}});
          h.coef = -h.coef;
          out.push_back(std::move(h));
        }
        break;
      }
      case LeafKind::kernel:
      case LeafKind::smooth:
      case LeafKind::fn: {
        if (leaf.kind == LeafKind::kernel && leaf.order != 0) {
          throw DomainMismatch("pullback of kernel derivatives is not supported");
        }
        Leaf l = leaf;
        l.f = sym::substitute(leaf.f, psi.map);
        if (l.kind == LeafKind::kernel) l.box = psi.domain;
        Monomial p{m.coef, {}};
        p.factors.push_back({l, std::nullopt, 1});
        out.push_back(std::move(p));
        break;
      }
      case LeafKind::cutoff: throw DomainMismatch("pullback of a cut-off net is not supported");
    }
  }
  return GenFunction(std::move(out), psi.domain);
}

GenFunction embed_product(const sym::Expr& f, const GenFunction& t) {
  std::vector<Monomial> out;
  for (const auto& m : t.terms()) {
    if (m.factors.empty()) {
      Monomial s{m.coef, {}};
      s.factors.push_back({Leaf{LeafKind::smooth, Rational(0), 0, f, {}}, std::nullopt, 1});
      out.push_back(std::move(s));
      continue;
    }
    const Leaf& leaf = single_leaf(m, "embed_product");
    switch (leaf.kind) {
      case LeafKind::point: {
        if (leaf.order < 0) {
          // f H_c is the regular kernel f(x) (1 + sign(x - c)) / 2.
          const sym::Expr h = (sym::constant(Rational(1)) +
                               sym::apply(sym::Fn::sign, sym::variable(0) - sym::constant(leaf.center))) /
                              sym::constant(Rational(2));
          Monomial k{m.coef, {}};
          k.factors.push_back({Leaf{LeafKind::kernel, Rational(0), 0, f * h, t.domain()}, std::nullopt, 1});
          out.push_back(std::move(k));
          break;
        }
        // f delta^(k) = sum_i C(k,i) (-1)^i f^(i)(c) delta^(k-i).
        sym::Expr fi = f;
        Rational binom(1);
        for (int i = 0; i <= leaf.order; ++i) {
          Rational v;
          if (auto exact = sym::eval_exact(fi, leaf.center)) {
            v = *exact;
          } else {
            v = rational_value(sym::eval(fi, to_double(leaf.center)));
          }
          if (v != 0) {
            Monomial d{m.coef * binom * v * (i % 2 ? -1 : 1), {}};
            d.factors.push_back({Leaf{LeafKind::point, leaf.center, leaf.order - i, {}, {}}, std::nullopt, 1});
            out.push_back(std::move(d));
          }
          binom = binom * (leaf.order - i) / (i + 1);
          fi = sym::derivative(fi);
        }
        break;
      }
      case LeafKind::kernel:
      case LeafKind::smooth:
      case LeafKind::fn: {
        if (leaf.kind == LeafKind::kernel && leaf.order != 0) {
          throw DomainMismatch("embed_product of kernel derivatives is not supported");
        }
        Leaf l = leaf;
        l.f = f * leaf.f;
        Monomial p{m.coef, {}};
        p.factors.push_back({l, std::nullopt, 1});
        out.push_back(std::move(p));
        break;
      }
      case LeafKind::cutoff: throw DomainMismatch("embed_product of a cut-off net is not supported");
    }
  }
  return GenFunction(std::move(out), t.domain());
}

bool structurally_equal(const GenFunction& a, const GenFunction& b) {
  return a.domain() == b.domain() && (a - b).is_zero();
}

}  // namespace asymptotica::gfunc
