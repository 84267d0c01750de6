#pragma once

#include "asymptotica/rational.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Small symbolic formula language for smooth callables: test functions,
// smooth and regular-kernel leaves, diffeomorphisms. Constants are exact.
//   expr := numbers, x (= x1), x2, x3, + - * /, ^ integer,
//           sin cos exp log sqrt abs sign bump
// bump(u) = exp(-1/(1-u^2)) for |u| < 1 and 0 otherwise (unnormalized).
namespace asymptotica::sym {

enum class Op { constant, variable, add, sub, mul, div, neg, pow, apply };
enum class Fn { sin, cos, exp, log, sqrt, abs, sign, bump };

struct Node;

class Expr {
 public:
  Expr();  // the constant 0
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  bool is_constant() const;
  bool is_constant(const Rational& v) const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op;
  Rational value;  // constant
  int index = 0;   // variable (0-based) or integer exponent
  Fn fn = Fn::sin;
  std::vector<Expr> args;
};

Expr constant(Rational v);
Expr variable(int index);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, int exponent);
Expr apply(Fn fn, const Expr& arg);

Expr parse(std::string_view text);
std::string to_string(const Expr& e);
const char* name(Fn fn);

Expr derivative(const Expr& e, int var = 0);
// Replaces variable 0 by the given expression.
Expr substitute(const Expr& e, const Expr& replacement);

// Evaluation. A product whose left factor is exactly zero is zero, so bump
// derivatives vanish cleanly at and beyond the edge of the support.
template <class R>
R eval(const Expr& e, std::span<const R> x);
double eval(const Expr& e, double x);
// Exact value at a rational point when the formula is rational there
// (constants, x, + - * /, integer powers); nullopt otherwise.
std::optional<Rational> eval_exact(const Expr& e, const Rational& x);

}  // namespace asymptotica::sym
