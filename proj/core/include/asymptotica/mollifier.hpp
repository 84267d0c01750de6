#pragma once

#include "asymptotica/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace asymptotica::mollifier {

// Expression tree over the base bump. Every parameter is an exact rational.
//   BaseBump          phi0(x)                     (dimension 1)
//   Dilate(m)         child(m x)
//   Scale(c)          c child(x)
//   Sum               sum of children (same dimension)
//   TensorProduct     child_1(x_1) ... child_k(x_k) over disjoint coordinates
//   EpsilonScale(e)   e^-d child(x / e)
enum class NodeKind { base_bump, dilate, scale, sum, tensor_product, epsilon_scale };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  Rational param;  // m, c or e; unused otherwise
  std::vector<NodePtr> children;
  int dim;
};

NodePtr base_bump_node();
NodePtr dilate(NodePtr child, Rational m);
NodePtr scale(NodePtr child, Rational c);
NodePtr sum(std::vector<NodePtr> children);
NodePtr tensor_product(std::vector<NodePtr> children);
NodePtr epsilon_scale(NodePtr child, Rational eps);

// Support radius of the tree: 1 for the bump, R/m under Dilate, sqrt of the
// sum of squares under TensorProduct, e R under EpsilonScale.
double support_radius(const Node& node);

// A one-dimensional factor  sum_j c_j phi0(s_j x),  s_j > 0, distinct.
struct AxisTerm {
  Rational c;
  Rational s;
};
using AxisSum = std::vector<AxisTerm>;

// coef * prod_i axes[i](x_i)
struct Block {
  Rational coef;
  std::vector<AxisSum> axes;
};

// Every tree is a finite sum of separable blocks.
std::vector<Block> flatten(const Node& node);

struct Meta {
  std::optional<Rational> m;    // dilation of the moment recursion
  std::optional<Rational> eps;  // scale applied at the last step
  std::optional<double> M;      // max(1, max_|alpha|<=n C_alpha)
  std::vector<double> C;        // C_k = sup |phi0^(k)|, k <= n
};

struct Mollifier {
  int dim = 1;
  int level = 0;
  NodePtr expr;
  double radius = 1.0;
  Meta meta;
  std::vector<Block> flat;  // cached flatten(*expr)
};

Mollifier from_tree(NodePtr expr, int level, Meta meta = {});

Mollifier base_bump();
// phi_n = a phi_{n-1}(x) + b phi_{n-1}(m x), a = -1/(m^n - 1), b = m^(n+1)/(m^n - 1).
// Throws BadDilation unless m > 2.
Mollifier moment_killer(int n, const Rational& m);
Mollifier tensorize(const Mollifier& phi, int d);
// e^-d psi(x / e) with e = 1 / (2 d M (18 d n)^(dn)): the product construction
// scaled down to level n. The factor 2 absorbs error in the sampled C_k.
// Throws LevelTooDeep when n d > 8.
Mollifier scale_to_level(const Mollifier& psi, int n);
// moment_killer(n, 9dn), tensorized to d and scaled to level n.
Mollifier level_mollifier(int n, int d);
// Same construction but with an explicit scale instead of the level-n epsilon.
Mollifier at_scale(int n, int d, const Rational& eps, std::optional<Rational> m = std::nullopt);

// Pointwise value of the partial derivative d^alpha phi(x). Exact expression
// evaluation through the flat form; zero outside the support.
double eval(const Mollifier& phi, const std::vector<double>& x, const std::vector<int>& alpha = {});

// Maximum |alpha| accepted by eval.
int max_derivative_order();

}  // namespace asymptotica::mollifier
