#include "asymptotica/symexpr.hpp"

#include "asymptotica/errors.hpp"
#include "real.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace asymptotica::sym {

namespace {

Expr make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr binary(Op op, const Expr& a, const Expr& b) { return make({op, Rational(0), 0, Fn::sin, {a, b}}); }

}  // namespace

Expr::Expr() : node_(std::make_shared<const Node>(Node{Op::constant, Rational(0), 0, Fn::sin, {}})) {}

bool Expr::is_constant() const { return node_->op == Op::constant; }
bool Expr::is_constant(const Rational& v) const { return node_->op == Op::constant && node_->value == v; }

Expr constant(Rational v) { return make({Op::constant, std::move(v), 0, Fn::sin, {}}); }

Expr variable(int index) {
  if (index < 0 || index > 2) throw ParseError("only x1, x2, x3 are supported");
  return make({Op::variable, Rational(0), index, Fn::sin, {}});
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.node().value + b.node().value);
  if (a.is_constant(Rational(0))) return b;
  if (b.is_constant(Rational(0))) return a;
  return binary(Op::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.node().value - b.node().value);
  if (b.is_constant(Rational(0))) return a;
  if (a.is_constant(Rational(0))) return -b;
  return binary(Op::sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.node().value * b.node().value);
  if (a.is_constant(Rational(0)) || b.is_constant(Rational(0))) return constant(Rational(0));
  if (a.is_constant(Rational(1))) return b;
  if (b.is_constant(Rational(1))) return a;
  return binary(Op::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(Rational(0))) throw DivisionByZero("division by the constant 0");
  if (a.is_constant() && b.is_constant()) return constant(a.node().value / b.node().value);
  if (a.is_constant(Rational(0))) return a;
  if (b.is_constant(Rational(1))) return a;
  return binary(Op::div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return constant(-a.node().value);
  if (a.node().op == Op::neg) return a.node().args[0];
  return make({Op::neg, Rational(0), 0, Fn::sin, {a}});
}

Expr pow(const Expr& a, int exponent) {
  if (exponent == 0) return constant(Rational(1));
  if (exponent == 1) return a;
  if (a.is_constant() && exponent > 0) {
    Rational r(1);
    for (int i = 0; i < exponent; ++i) r *= a.node().value;
    return constant(r);
  }
  return make({Op::pow, Rational(0), exponent, Fn::sin, {a}});
}

Expr apply(Fn fn, const Expr& arg) { return make({Op::apply, Rational(0), 0, fn, {arg}}); }

const char* name(Fn fn) {
  switch (fn) {
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::exp: return "exp";
    case Fn::log: return "log";
    case Fn::sqrt: return "sqrt";
    case Fn::abs: return "abs";
    case Fn::sign: return "sign";
    case Fn::bump: return "bump";
  }
  return "?";
}

// ------------------------------------------------------------------ parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Expr sum() {
    Expr e = product();
    for (;;) {
      if (eat('+')) {
        e = e + product();
      } else if (eat('-')) {
        e = e - product();
      } else {
        return e;
      }
    }
  }
  Expr product() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) {
        e = e * unary();
      } else if (eat('/')) {
        e = e / unary();
      } else {
        return e;
      }
    }
  }
  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Expr power() {
    Expr base = primary();
    if (!eat('^')) return base;
    skip();
    bool paren = eat('(');
    skip();
    bool negative = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren && !eat(')')) fail("expected ')'");
    return pow(base, negative ? -e : e);
  }
  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      Expr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ + 1 < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') &&
          (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
        pos_ += 2;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      return constant(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (id == "x" || id == "x1") return variable(0);
      if (id == "x2") return variable(1);
      if (id == "x3") return variable(2);
      static const std::map<std::string, Fn> fns{{"sin", Fn::sin},   {"cos", Fn::cos},   {"exp", Fn::exp},
                                                 {"log", Fn::log},   {"sqrt", Fn::sqrt}, {"abs", Fn::abs},
                                                 {"sign", Fn::sign}, {"bump", Fn::bump}};
      auto it = fns.find(id);
      if (it == fns.end()) fail("unknown identifier '" + id + "'");
      if (!eat('(')) fail("expected '(' after " + id);
      Expr arg = sum();
      if (!eat(')')) fail("expected ')'");
      return apply(it->second, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.node().op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    case Op::constant: return e.node().value < 0 || denominator_of(e.node().value) != 1 ? 2 : 5;
    default: return 5;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = to_string(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr& e) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::constant: return asymptotica::to_string(n.value);
    case Op::variable: return n.index == 0 ? "x" : "x" + std::to_string(n.index + 1);
    case Op::add: return wrap(n.args[0], 1) + " + " + wrap(n.args[1], 2);
    case Op::sub: return wrap(n.args[0], 1) + " - " + wrap(n.args[1], 2);
    case Op::mul: return wrap(n.args[0], 2) + "*" + wrap(n.args[1], 3);
    case Op::div: return wrap(n.args[0], 2) + "/" + wrap(n.args[1], 3);
    case Op::neg: return "-" + wrap(n.args[0], 3);
    case Op::pow: {
      std::string ex = std::to_string(n.index);
      if (n.index < 0) ex = "(" + ex + ")";
      return wrap(n.args[0], 5) + "^" + ex;
    }
    case Op::apply: return std::string(name(n.fn)) + "(" + to_string(n.args[0]) + ")";
  }
  return "?";
}

// ----------------------------------------------------------- differentiation

Expr derivative(const Expr& e, int var) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::constant: return constant(Rational(0));
    case Op::variable: return constant(Rational(n.index == var ? 1 : 0));
    case Op::add: return derivative(n.args[0], var) + derivative(n.args[1], var);
    case Op::sub: return derivative(n.args[0], var) - derivative(n.args[1], var);
    case Op::mul:
      return derivative(n.args[0], var) * n.args[1] + n.args[0] * derivative(n.args[1], var);
    case Op::div: {
      const Expr& a = n.args[0];
      const Expr& b = n.args[1];
      return (derivative(a, var) * b - a * derivative(b, var)) / pow(b, 2);
    }
    case Op::neg: return -derivative(n.args[0], var);
    case Op::pow: {
      const Expr& a = n.args[0];
      return constant(Rational(n.index)) * pow(a, n.index - 1) * derivative(a, var);
    }
    case Op::apply: {
      const Expr& u = n.args[0];
      const Expr du = derivative(u, var);
      if (du.is_constant(Rational(0))) return constant(Rational(0));
      switch (n.fn) {
        case Fn::sin: return apply(Fn::cos, u) * du;
        case Fn::cos: return -(apply(Fn::sin, u) * du);
        case Fn::exp: return e * du;
        case Fn::log: return du / u;
        case Fn::sqrt: return du / (constant(Rational(2)) * e);
        case Fn::abs: return apply(Fn::sign, u) * du;
        case Fn::sign: return constant(Rational(0));
        case Fn::bump:
          // bump' = bump * (-2u) / (1-u^2)^2; the bump factor comes first.
          return e * (constant(Rational(-2)) * u / pow(constant(Rational(1)) - pow(u, 2), 2)) * du;
      }
    }
  }
  return constant(Rational(0));
}

Expr substitute(const Expr& e, const Expr& r) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::constant: return e;
    case Op::variable: return n.index == 0 ? r : e;
    case Op::add: return substitute(n.args[0], r) + substitute(n.args[1], r);
    case Op::sub: return substitute(n.args[0], r) - substitute(n.args[1], r);
    case Op::mul: return substitute(n.args[0], r) * substitute(n.args[1], r);
    case Op::div: return substitute(n.args[0], r) / substitute(n.args[1], r);
    case Op::neg: return -substitute(n.args[0], r);
    case Op::pow: return pow(substitute(n.args[0], r), n.index);
    case Op::apply: return apply(n.fn, substitute(n.args[0], r));
  }
  return e;
}

// ---------------------------------------------------------------- evaluation

namespace {

template <class R>
R eval_node(const Node& n, std::span<const R> x) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  switch (n.op) {
    case Op::constant: return detail::from_rational<R>(n.value);
    case Op::variable:
      if (static_cast<std::size_t>(n.index) >= x.size()) throw DomainMismatch("formula uses an unbound variable");
      return x[static_cast<std::size_t>(n.index)];
    case Op::add: return eval_node(n.args[0].node(), x) + eval_node(n.args[1].node(), x);
    case Op::sub: return eval_node(n.args[0].node(), x) - eval_node(n.args[1].node(), x);
    case Op::mul: {
      R a = eval_node(n.args[0].node(), x);
      if (a == 0) return a;
      return a * eval_node(n.args[1].node(), x);
    }
    case Op::div: {
      R a = eval_node(n.args[0].node(), x);
      if (a == 0) return a;
      return a / eval_node(n.args[1].node(), x);
    }
    case Op::neg: return -eval_node(n.args[0].node(), x);
    case Op::pow: {
      R a = eval_node(n.args[0].node(), x);
      int k = n.index;
      R base = k < 0 ? R(1) / a : a;
      if (k < 0) k = -k;
      R r = 1;
      while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
      }
      return r;
    }
    case Op::apply: {
      R u = eval_node(n.args[0].node(), x);
      switch (n.fn) {
        case Fn::sin: return sin(u);
        case Fn::cos: return cos(u);
        case Fn::exp: return exp(u);
        case Fn::log: return log(u);
        case Fn::sqrt: return sqrt(u);
        case Fn::abs: return abs(u);
        case Fn::sign: return u > 0 ? R(1) : u < 0 ? R(-1) : R(0);
        case Fn::bump: {
          R w = 1 - u * u;
          if (w <= 0) return R(0);
          return exp(-1 / w);
        }
      }
    }
  }
  return R(0);
}

}  // namespace

template <class R>
R eval(const Expr& e, std::span<const R> x) {
  return eval_node<R>(e.node(), x);
}

double eval(const Expr& e, double x) { return eval<double>(e, std::span<const double>(&x, 1)); }

std::optional<Rational> eval_exact(const Expr& e, const Rational& x) {
  const Node& n = e.node();
  auto arg = [&](int i) { return eval_exact(n.args[static_cast<std::size_t>(i)], x); };
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable:
      if (n.index != 0) return std::nullopt;
      return x;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      auto a = arg(0);
      auto b = arg(1);
      if (!a || !b) return std::nullopt;
      if (n.op == Op::add) return *a + *b;
      if (n.op == Op::sub) return *a - *b;
      if (n.op == Op::mul) return *a * *b;
      if (*b == 0) return std::nullopt;
      return *a / *b;
    }
    case Op::neg: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Op::pow: {
      auto a = arg(0);
      if (!a || (*a == 0 && n.index < 0)) return std::nullopt;
      Rational r(1);
      for (int i = 0; i < std::abs(n.index); ++i) r *= *a;
      return n.index < 0 ? Rational(1) / r : r;
    }
    case Op::apply: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      if (n.fn == Fn::abs) return *a < 0 ? Rational(-*a) : *a;
      if (n.fn == Fn::sign) return Rational(*a > 0 ? 1 : *a < 0 ? -1 : 0);
      if (*a == 0 && (n.fn == Fn::sin)) return Rational(0);
      if (*a == 0 && (n.fn == Fn::cos || n.fn == Fn::exp)) return Rational(1);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

template double eval<double>(const Expr&, std::span<const double>);
template detail::HighReal eval<detail::HighReal>(const Expr&, std::span<const detail::HighReal>);

}  // namespace asymptotica::sym
