#include "asymptotica/errors.hpp"
#include "asymptotica/lc_io.hpp"

#include <cctype>

namespace asymptotica::lc {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Rational& trunc) : s_(text), trunc_(trunc) {}

  LCNumber parse() {
    LCNumber v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
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

  LCNumber expr() {
    LCNumber v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  LCNumber term() {
    LCNumber v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        v = v / unary();
      } else {
        return v;
      }
    }
  }

  LCNumber unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  // Exponent: a signed rational literal, optionally parenthesised.
  Rational exponent() {
    skip();
    bool paren = eat('(');
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
                                s_[pos_] == '.')) {
      if (s_[pos_] == '/' && !paren) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected exponent");
    Rational q = parse_rational(s_.substr(start, pos_ - start));
    if (paren && !eat(')')) fail("expected ')'");
    return q;
  }

  LCNumber power() {
    bool is_rho = false;
    LCNumber base = primary(is_rho);
    if (!eat('^')) return base;
    Rational e = exponent();
    if (is_rho) return LCNumber::monomial(1.0, e, trunc_);
    if (denominator_of(e) != 1) fail("non-integer exponent on a non-monomial base");
    return pow(base, static_cast<int>(numerator_of(e)));
  }

  LCNumber primary(bool& is_rho) {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      LCNumber v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
          (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
        pos_ += 2;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      return LCNumber(to_double(parse_rational(s_.substr(start, pos_ - start))), trunc_);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "rho") {
        is_rho = true;
        return LCNumber::rho(trunc_);
      }
      if (name == "i") return LCNumber(Coef(0.0, 1.0), trunc_);
      if (!eat('(')) fail("unknown symbol '" + name + "'");
      LCNumber arg = expr();
      if (!eat(')')) fail("expected ')'");
      if (name == "inverse") return inverse(arg);
      if (name == "sqrt") return sqrt_nonneg(arg);
      if (name == "abs") return abs(arg);
      if (name == "conj") return arg.conj();
      fail("unknown function '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  Rational trunc_;
  std::size_t pos_ = 0;
};

}  // namespace

LCNumber parse_lc(std::string_view text, const Rational& truncation) { return Parser(text, truncation).parse(); }

}  // namespace asymptotica::lc
