#include "asymptotica/errors.hpp"
#include "asymptotica/gfunc.hpp"

#include <cctype>

namespace asymptotica::gfunc {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  GenFunction parse() {
    GenFunction g = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return g;
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

  GenFunction sum() {
    GenFunction g = product();
    for (;;) {
      if (eat('+')) {
        g = g + product();
      } else if (eat('-')) {
        g = g - product();
      } else {
        return g;
      }
    }
  }
  GenFunction product() {
    GenFunction g = unary();
    while (eat('*')) g = g * unary();
    return g;
  }
  GenFunction unary() {
    if (eat('-')) return -unary();
    return power();
  }
  GenFunction power() {
    GenFunction g = primary();
    if (!eat('^')) return g;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    return gfunc::pow(g, std::stoi(std::string(s_.substr(start, pos_ - start))));
  }

  // Splits the parenthesised argument list that starts at pos_.
  std::vector<std::string> arguments() {
    if (!eat('(')) return {};
    std::vector<std::string> args;
    int depth = 0;
    std::size_t start = pos_;
    for (; pos_ < s_.size(); ++pos_) {
      const char c = s_[pos_];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) {
          args.push_back(trim(s_.substr(start, pos_ - start)));
          ++pos_;
          return args;
        }
        --depth;
      } else if (c == ',' && depth == 0) {
        args.push_back(trim(s_.substr(start, pos_ - start)));
        start = pos_ + 1;
      }
    }
    fail("unbalanced parentheses");
  }

  void arity(const std::string& id, const std::vector<std::string>& args, std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      fail(id + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
           " arguments");
    }
  }

  static Rational rational(const std::string& s) { return parse_rational(s); }
  static int integer(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ParseError("expected an integer, got \"" + s + "\"");
    return v;
  }
  static double bound(const std::string& s) {
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    return to_double(parse_rational(s));
  }
  static Diffeo diffeo(const std::vector<std::string>& args, std::size_t at) {
    Interval dom;
    if (args.size() > at + 1) dom = {bound(args[at + 1]), bound(args[at + 2])};
    return make_diffeo(sym::parse(args[at]), dom);
  }

  GenFunction primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      GenFunction g = sum();
      if (!eat(')')) fail("expected ')'");
      return g;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                  s_[pos_] == '/')) {
        ++pos_;
      }
      return constant(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string id(s_.substr(start, pos_ - start));
    skip();
    const auto args = arguments();
    auto sub = [](const std::string& a) { return gfunc::parse(a); };

    if (id == "H" || id == "delta" || id == "ddelta") {
      arity(id, args, 0, 1);
      const Rational center = args.empty() ? Rational(0) : rational(args[0]);
      if (id == "H") return heaviside(center);
      return delta(center, id == "delta" ? 0 : 1);
    }
    if (id == "smooth" || id == "fn") {
      arity(id, args, 1, 1);
      const auto f = sym::parse(args[0]);
      return id == "smooth" ? embed_smooth(f) : sigma(f);
    }
    if (id == "kernel") {
      arity(id, args, 1, 3);
      if (args.size() == 2) fail("kernel takes a formula and optionally lo, hi");
      Interval dom;
      if (args.size() == 3) dom = {bound(args[1]), bound(args[2])};
      return embed_kernel(sym::parse(args[0]), dom);
    }
    if (id == "cutoff") {
      arity(id, args, 2, 2);
      return cutoff({bound(args[0]), bound(args[1])});
    }
    if (id == "add" || id == "mul") {
      if (args.empty()) fail(id + " needs arguments");
      GenFunction g = sub(args[0]);
      for (std::size_t i = 1; i < args.size(); ++i) g = id == "add" ? g + sub(args[i]) : g * sub(args[i]);
      return g;
    }
    if (id == "sub") {
      arity(id, args, 2, 2);
      return sub(args[0]) - sub(args[1]);
    }
    if (id == "neg") {
      arity(id, args, 1, 1);
      return -sub(args[0]);
    }
    if (id == "scale") {
      arity(id, args, 2, 2);
      return rational(args[0]) * sub(args[1]);
    }
    if (id == "derive") {
      arity(id, args, 1, 2);
      return derive(sub(args[0]), args.size() == 2 ? integer(args[1]) : 1);
    }
    if (id == "pow") {
      arity(id, args, 2, 2);
      return gfunc::pow(sub(args[0]), integer(args[1]));
    }
    if (id == "compose" || id == "pullback") {
      arity(id, args, 2, 4);
      if (args.size() == 3) fail(id + " takes g, psi and optionally lo, hi");
      const Diffeo psi = diffeo(args, 1);
      return id == "compose" ? compose_diffeo(sub(args[0]), psi) : pullback(sub(args[0]), psi);
    }
    if (id == "fmul") {
      arity(id, args, 2, 2);
      return embed_product(sym::parse(args[0]), sub(args[1]));
    }
    fail("unknown name '" + id + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GenFunction parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace asymptotica::gfunc
