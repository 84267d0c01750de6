#include "asymptotica/mollifier.hpp"

#include "asymptotica/bump.hpp"
#include "asymptotica/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace asymptotica::mollifier {

namespace {

NodePtr make(NodeKind kind, Rational param, std::vector<NodePtr> children, int dim) {
  return std::make_shared<const Node>(Node{kind, std::move(param), std::move(children), dim});
}

Rational pow_rational(const Rational& base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Merges equal dilations and drops cancelled terms.
AxisSum canonical(AxisSum axis) {
  std::map<Rational, Rational> by_s;
  for (auto& t : axis) by_s[t.s] += t.c;
  AxisSum out;
  for (auto& [s, c] : by_s) {
    if (c != 0) out.push_back({c, s});
  }
  return out;
}

}  // namespace

NodePtr base_bump_node() { return make(NodeKind::base_bump, Rational(0), {}, 1); }

NodePtr dilate(NodePtr child, Rational m) {
  if (m <= 0) throw BadDilation("dilation factor must be positive");
  int d = child->dim;
  return make(NodeKind::dilate, std::move(m), {std::move(child)}, d);
}

NodePtr scale(NodePtr child, Rational c) {
  int d = child->dim;
  return make(NodeKind::scale, std::move(c), {std::move(child)}, d);
}

NodePtr sum(std::vector<NodePtr> children) {
  if (children.empty()) throw DomainMismatch("empty sum");
  for (const auto& c : children) {
    if (c->dim != children.front()->dim) throw DomainMismatch("sum of mollifiers of different dimension");
  }
  int d = children.front()->dim;
  return make(NodeKind::sum, Rational(0), std::move(children), d);
}

NodePtr tensor_product(std::vector<NodePtr> children) {
  if (children.empty()) throw DomainMismatch("empty tensor product");
  int d = 0;
  for (const auto& c : children) d += c->dim;
  return make(NodeKind::tensor_product, Rational(0), std::move(children), d);
}

NodePtr epsilon_scale(NodePtr child, Rational eps) {
  if (eps <= 0) throw DomainMismatch("scale must be positive");
  int d = child->dim;
  return make(NodeKind::epsilon_scale, std::move(eps), {std::move(child)}, d);
}

double support_radius(const Node& node) {
  switch (node.kind) {
    case NodeKind::base_bump: return 1.0;
    case NodeKind::dilate: return support_radius(*node.children[0]) / to_double(node.param);
    case NodeKind::scale: return node.param == 0 ? 0.0 : support_radius(*node.children[0]);
    case NodeKind::sum: {
      double r = 0.0;
      for (const auto& c : node.children) r = std::max(r, support_radius(*c));
      return r;
    }
    case NodeKind::tensor_product: {
      double s = 0.0;
      for (const auto& c : node.children) {
        double r = support_radius(*c);
        s += r * r;
      }
      return std::sqrt(s);
    }
    case NodeKind::epsilon_scale: return to_double(node.param) * support_radius(*node.children[0]);
  }
  return 0.0;
}

std::vector<Block> flatten(const Node& node) {
  std::vector<Block> out;
  switch (node.kind) {
    case NodeKind::base_bump:
      out.push_back({Rational(1), {{{Rational(1), Rational(1)}}}});
      break;
    case NodeKind::dilate:
      out = flatten(*node.children[0]);
      for (auto& b : out) {
        for (auto& axis : b.axes) {
          for (auto& t : axis) t.s *= node.param;
        }
      }
      break;
    case NodeKind::scale:
      out = flatten(*node.children[0]);
      for (auto& b : out) b.coef *= node.param;
      break;
    case NodeKind::sum:
      for (const auto& c : node.children) {
        auto part = flatten(*c);
        out.insert(out.end(), part.begin(), part.end());
      }
      break;
    case NodeKind::tensor_product: {
      out.push_back({Rational(1), {}});
      for (const auto& c : node.children) {
        auto part = flatten(*c);
        std::vector<Block> next;
        for (const auto& a : out) {
          for (const auto& b : part) {
            Block blk{a.coef * b.coef, a.axes};
            blk.axes.insert(blk.axes.end(), b.axes.begin(), b.axes.end());
            next.push_back(std::move(blk));
          }
        }
        out = std::move(next);
      }
      break;
    }
    case NodeKind::epsilon_scale: {
      out = flatten(*node.children[0]);
      const Rational inv_d = pow_rational(1 / node.param, node.dim);
      for (auto& b : out) {
        b.coef *= inv_d;
        for (auto& axis : b.axes) {
          for (auto& t : axis) t.s /= node.param;
        }
      }
      break;
    }
  }
  // Single-axis blocks with identical structure merge into one axis sum.
  if (node.dim == 1 && out.size() > 1) {
    AxisSum merged;
    for (const auto& b : out) {
      for (const auto& t : b.axes[0]) merged.push_back({t.c * b.coef, t.s});
    }
    out = {{Rational(1), {canonical(std::move(merged))}}};
  } else {
    for (auto& b : out) {
      for (auto& axis : b.axes) axis = canonical(std::move(axis));
    }
  }
  return out;
}

Mollifier from_tree(NodePtr expr, int level, Meta meta) {
  Mollifier m;
  m.dim = expr->dim;
  m.level = level;
  m.radius = support_radius(*expr);
  m.flat = flatten(*expr);
  m.expr = std::move(expr);
  m.meta = std::move(meta);
  return m;
}

Mollifier base_bump() { return from_tree(base_bump_node(), 0); }

Mollifier moment_killer(int n, const Rational& m) {
  if (m <= 2) throw BadDilation("moment_killer needs m > 2, got " + to_string(m));
  if (n < 0) throw DomainMismatch("moment_killer needs n >= 0");
  NodePtr phi = base_bump_node();
  for (int k = 1; k <= n; ++k) {
    const Rational mk = pow_rational(m, k);
    const Rational a = Rational(-1) / (mk - 1);
    const Rational b = mk * m / (mk - 1);
    phi = sum({scale(phi, a), scale(dilate(phi, m), b)});
  }
  Meta meta;
  meta.m = m;
  return from_tree(phi, 0, meta);
}

Mollifier tensorize(const Mollifier& phi, int d) {
  if (phi.dim != 1) throw DomainMismatch("tensorize needs a one-dimensional mollifier");
  if (d < 1) throw DomainMismatch("tensorize needs d >= 1");
  if (d == 1) return phi;
  std::vector<NodePtr> factors(static_cast<std::size_t>(d), phi.expr);
  return from_tree(tensor_product(std::move(factors)), phi.level, phi.meta);
}

namespace {

// max(1, max_{|alpha| <= n} prod_i C_{alpha_i}) over alpha in N^d.
double level_constant(int n, int d, const std::vector<double>& C) {
  double best = 1.0;
  std::vector<int> alpha(static_cast<std::size_t>(d), 0);
  for (;;) {
    int total = 0;
    for (int a : alpha) total += a;
    if (total <= n) {
      double p = 1.0;
      for (int a : alpha) p *= C[static_cast<std::size_t>(a)];
      best = std::max(best, p);
    }
    std::size_t i = 0;
    while (i < alpha.size() && ++alpha[i] > n) alpha[i++] = 0;
    if (i == alpha.size()) break;
  }
  return best;
}

}  // namespace

Mollifier scale_to_level(const Mollifier& psi, int n) {
  const int d = psi.dim;
  if (n < 1) throw DomainMismatch("scale_to_level needs n >= 1");
  if (n * d > 8) throw LevelTooDeep("n d = " + std::to_string(n * d) + " exceeds 8");
  Meta meta = psi.meta;
  meta.C.clear();
  for (int k = 0; k <= n; ++k) meta.C.push_back(bump_derivative_sup(k));
  meta.M = level_constant(n, d, meta.C);
  const Rational M = rational_from_double(*meta.M);
  const Rational eps = Rational(1) / (2 * d * M * pow_rational(Rational(18 * d * n), d * n));
  meta.eps = eps;
  return from_tree(epsilon_scale(psi.expr, eps), n, meta);
}

Mollifier level_mollifier(int n, int d) {
  return scale_to_level(tensorize(moment_killer(n, Rational(9 * d * n)), d), n);
}

Mollifier at_scale(int n, int d, const Rational& eps, std::optional<Rational> m) {
  Mollifier psi = tensorize(moment_killer(n, m.value_or(Rational(9 * d * std::max(n, 1)))), d);
  Meta meta = psi.meta;
  meta.eps = eps;
  return from_tree(epsilon_scale(psi.expr, eps), n, meta);
}

int max_derivative_order() { return max_bump_derivative(); }

double eval(const Mollifier& phi, const std::vector<double>& x, const std::vector<int>& alpha) {
  if (static_cast<int>(x.size()) != phi.dim) throw DomainMismatch("point dimension does not match");
  if (!alpha.empty() && static_cast<int>(alpha.size()) != phi.dim) {
    throw DomainMismatch("multi-index dimension does not match");
  }
  int order = 0;
  for (int a : alpha) order += a;
  if (order > max_derivative_order()) throw DomainMismatch("derivative order too high");
  double total = 0.0;
  for (const auto& b : phi.flat) {
    double prod = to_double(b.coef);
    for (std::size_t i = 0; i < b.axes.size() && prod != 0.0; ++i) {
      const int k = alpha.empty() ? 0 : alpha[i];
      double axis = 0.0;
      for (const auto& t : b.axes[i]) {
        const double s = to_double(t.s);
        axis += to_double(t.c) * std::pow(s, k) * bump0_derivative(s * x[i], k);
      }
      prod *= axis;
    }
    total += prod;
  }
  return total;
}

}  // namespace asymptotica::mollifier
