#pragma once

// Radial expression language for user-defined weights.
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := base ("^" rational)?
//   base   := number | "r" | "exp" "(" expr ")" | "(" expr ")"
//
// Whitespace is insignificant. A number may carry a leading minus sign when it
// starts a factor ("r*-2", "r^-1"); this is what lets every simplified
// derivative print back into the grammar.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>

#include "focklab/errors.hpp"
#include "focklab/log_value.hpp"
#include "focklab/rational.hpp"

namespace focklab::expr {

enum class NodeKind { Const, Var, Add, Sub, Mul, Div, Pow, Exp };

struct ExprNode;
using WeightExprAst = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind = NodeKind::Const;
  double value = 0.0;   // Const
  Rational exponent;    // Pow
  WeightExprAst lhs;    // unary child, or left operand
  WeightExprAst rhs;    // right operand
};

// ---------------------------------------------------------------------------
// Raw constructors (no simplification). The parser uses these so that parsing
// reproduces exactly the tree that was printed.

inline WeightExprAst make_const(double v) { return std::make_shared<const ExprNode>(ExprNode{NodeKind::Const, v, {}, {}, {}}); }
inline WeightExprAst make_var() { return std::make_shared<const ExprNode>(ExprNode{NodeKind::Var, 0.0, {}, {}, {}}); }
inline WeightExprAst make_binary(NodeKind k, WeightExprAst a, WeightExprAst b) {
  return std::make_shared<const ExprNode>(ExprNode{k, 0.0, {}, std::move(a), std::move(b)});
}
inline WeightExprAst make_pow(WeightExprAst base, Rational q) {
  return std::make_shared<const ExprNode>(ExprNode{NodeKind::Pow, 0.0, q, std::move(base), {}});
}
inline WeightExprAst make_exp(WeightExprAst a) {
  return std::make_shared<const ExprNode>(ExprNode{NodeKind::Exp, 0.0, {}, std::move(a), {}});
}

inline bool structurally_equal(const WeightExprAst& a, const WeightExprAst& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Const: return a->value == b->value;
    case NodeKind::Var: return true;
    case NodeKind::Pow: return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    case NodeKind::Exp: return structurally_equal(a->lhs, b->lhs);
    default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

// ---------------------------------------------------------------------------
// Simplifying constructors: constant folding and the x*0, x*1, x+0 family.

namespace detail {
inline bool is_const(const WeightExprAst& e, double v) { return e->kind == NodeKind::Const && e->value == v; }
inline bool is_const(const WeightExprAst& e) { return e->kind == NodeKind::Const; }
}  // namespace detail

inline WeightExprAst add(WeightExprAst a, WeightExprAst b) {
  using detail::is_const;
  if (is_const(a) && is_const(b)) return make_const(a->value + b->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_binary(NodeKind::Add, std::move(a), std::move(b));
}

inline WeightExprAst sub(WeightExprAst a, WeightExprAst b) {
  using detail::is_const;
  if (is_const(a) && is_const(b)) return make_const(a->value - b->value);
  if (is_const(b, 0.0)) return a;
  return make_binary(NodeKind::Sub, std::move(a), std::move(b));
}

inline WeightExprAst mul(WeightExprAst a, WeightExprAst b) {
  using detail::is_const;
  if (is_const(a) && is_const(b)) return make_const(a->value * b->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make_binary(NodeKind::Mul, std::move(a), std::move(b));
}

inline WeightExprAst div(WeightExprAst a, WeightExprAst b) {
  using detail::is_const;
  if (is_const(a) && is_const(b) && b->value != 0.0) return make_const(a->value / b->value);
  if (is_const(a, 0.0)) return make_const(0.0);
  if (is_const(b, 1.0)) return a;
  return make_binary(NodeKind::Div, std::move(a), std::move(b));
}

inline WeightExprAst pow(WeightExprAst base, Rational q) {
  if (q == Rational(0)) return make_const(1.0);
  if (q == Rational(1)) return base;
  if (detail::is_const(base)) {
    const double v = std::pow(base->value, q.to_double());
    if (std::isfinite(v) && (base->value > 0 || q.den() % 2 == 1)) return make_const(v);
  }
  return make_pow(std::move(base), q);
}

inline WeightExprAst exp(WeightExprAst a) {
  if (detail::is_const(a, 0.0)) return make_const(1.0);
  return make_exp(std::move(a));
}

/// One bottom-up pass through the simplifying constructors.
inline WeightExprAst simplify(const WeightExprAst& e) {
  switch (e->kind) {
    case NodeKind::Const:
    case NodeKind::Var: return e;
    case NodeKind::Add: return add(simplify(e->lhs), simplify(e->rhs));
    case NodeKind::Sub: return sub(simplify(e->lhs), simplify(e->rhs));
    case NodeKind::Mul: return mul(simplify(e->lhs), simplify(e->rhs));
    case NodeKind::Div: return div(simplify(e->lhs), simplify(e->rhs));
    case NodeKind::Pow: return pow(simplify(e->lhs), e->exponent);
    case NodeKind::Exp: return exp(simplify(e->lhs));
  }
  return e;
}

/// d/dr, simplified as it is built.
inline WeightExprAst differentiate(const WeightExprAst& e) {
  switch (e->kind) {
    case NodeKind::Const: return make_const(0.0);
    case NodeKind::Var: return make_const(1.0);
    case NodeKind::Add: return add(differentiate(e->lhs), differentiate(e->rhs));
    case NodeKind::Sub: return sub(differentiate(e->lhs), differentiate(e->rhs));
    case NodeKind::Mul:
      return add(mul(differentiate(e->lhs), e->rhs), mul(e->lhs, differentiate(e->rhs)));
    case NodeKind::Div:
      return div(sub(mul(differentiate(e->lhs), e->rhs), mul(e->lhs, differentiate(e->rhs))),
                 pow(e->rhs, Rational(2)));
    case NodeKind::Pow:
      return mul(mul(make_const(e->exponent.to_double()), pow(e->lhs, e->exponent - Rational(1))),
                 differentiate(e->lhs));
    case NodeKind::Exp: return mul(differentiate(e->lhs), e);
  }
  return make_const(0.0);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Pow: return 3;
    default: return 4;
  }
}

// Shortest of %.15g/%.16g/%.17g that reads back to the same double.
inline std::string format_number(double v) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string format_exponent(const Rational& q) {
  if (q.is_integer()) return std::to_string(q.num());
  return "(" + std::to_string(q.num()) + "/" + std::to_string(q.den()) + ")";
}

inline void print(const WeightExprAst& e, std::string& out);

inline void print_child(const WeightExprAst& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

inline void print(const WeightExprAst& e, std::string& out) {
  switch (e->kind) {
    case NodeKind::Const: out += format_number(e->value); return;
    case NodeKind::Var: out += 'r'; return;
    case NodeKind::Exp:
      out += "exp(";
      print(e->lhs, out);
      out += ')';
      return;
    case NodeKind::Pow:
      print_child(e->lhs, precedence(e->lhs->kind) <= 3, out);
      out += '^';
      out += format_exponent(e->exponent);
      return;
    default: {
      const int p = precedence(e->kind);
      print_child(e->lhs, precedence(e->lhs->kind) < p, out);
      out += e->kind == NodeKind::Add ? " + " : e->kind == NodeKind::Sub ? " - " : e->kind == NodeKind::Mul ? "*" : "/";
      print_child(e->rhs, precedence(e->rhs->kind) <= p, out);
      return;
    }
  }
}

}  // namespace detail

inline std::string to_string(const WeightExprAst& e) {
  std::string out;
  detail::print(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  WeightExprAst parse_all() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "expression");
    for (char c : s_) {
      if (static_cast<unsigned char>(c) > 127) throw SyntaxError(pos_, "ASCII input");
    }
    auto e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "operator or end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
    ++pos_;
  }

  WeightExprAst parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        lhs = make_binary(NodeKind::Add, lhs, parse_term());
      } else if (peek('-')) {
        ++pos_;
        lhs = make_binary(NodeKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  WeightExprAst parse_term() {
    auto lhs = parse_factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        lhs = make_binary(NodeKind::Mul, lhs, parse_factor());
      } else if (peek('/')) {
        ++pos_;
        lhs = make_binary(NodeKind::Div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  WeightExprAst parse_factor() {
    auto base = parse_base();
    if (peek('^')) {
      ++pos_;
      return make_pow(base, parse_rational());
    }
    return base;
  }

  // rational := ["-"] decimal | "(" ["-"] integer "/" integer ")"
  Rational parse_rational() {
    skip_ws();
    if (peek('(')) {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
      const std::string num = digits();
      if (num.empty()) throw SyntaxError(pos_, "integer numerator");
      expect('/');
      skip_ws();
      const std::string den = digits();
      if (den.empty()) throw SyntaxError(pos_, "integer denominator");
      const bool neg = s_[start] == '-';
      expect(')');
      try {
        const Rational q = Rational::parse(num) / Rational::parse(den);
        return neg ? -q : q;
      } catch (const InvalidParameter&) {
        throw SyntaxError(start, "nonzero denominator");
      }
    }
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::string text = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      text += '.';
      text += digits();
    }
    if (text.empty() || text == ".") {
      pos_ = start;
      throw SyntaxError(pos_, "rational exponent");
    }
    try {
      const Rational q = Rational::parse(text);
      return neg ? -q : q;
    } catch (const InvalidParameter&) {
      throw SyntaxError(start, "rational exponent");
    }
  }

  std::string digits() {
    std::string d;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += s_[pos_++];
    return d;
  }

  WeightExprAst parse_number() {
    const std::size_t start = pos_;
    if (s_[pos_] == '-') ++pos_;
    const std::size_t int_start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    bool any = pos_ > int_start;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      const std::size_t frac = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      any = any || pos_ > frac;
    }
    if (!any) throw SyntaxError(start, "number");
    // Exponent part only when a digit follows, so "2e" never swallows an identifier.
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        pos_ = k;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string token(s_.substr(start, pos_ - start));
    return make_const(std::strtod(token.c_str(), nullptr));
  }

  WeightExprAst parse_base() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "number, 'r', 'exp' or '('");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
        (c == '-' && pos_ + 1 < s_.size() &&
         (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '.'))) {
      return parse_number();
    }
    if (c == '(') {
      ++pos_;
      auto e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "r") return make_var();
      if (name == "exp") {
        expect('(');
        auto e = parse_expr();
        expect(')');
        return make_exp(e);
      }
      throw UnknownIdentifier(name);
    }
    throw SyntaxError(pos_, "number, 'r', 'exp' or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline WeightExprAst parse(std::string_view text) { return detail::Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Evaluation

/// Value at r as a sign and log-magnitude. An exponential never materializes
/// its own value, only its argument's, so exp(exp(r)) is exact far beyond the
/// range of double.
inline LogValue eval_signed_log(const WeightExprAst& e, double r) {
  switch (e->kind) {
    case NodeKind::Const: return LogValue::from_double(e->value);
    case NodeKind::Var: return LogValue::from_double(r);
    case NodeKind::Add: return eval_signed_log(e->lhs, r) + eval_signed_log(e->rhs, r);
    case NodeKind::Sub: return eval_signed_log(e->lhs, r) - eval_signed_log(e->rhs, r);
    case NodeKind::Mul: return eval_signed_log(e->lhs, r) * eval_signed_log(e->rhs, r);
    case NodeKind::Div: return eval_signed_log(e->lhs, r) / eval_signed_log(e->rhs, r);
    case NodeKind::Pow: {
      const LogValue b = eval_signed_log(e->lhs, r);
      const Rational q = e->exponent;
      if (b.sign == 0) {
        if (q > Rational(0)) return LogValue::zero();
        return {1, kInf};
      }
      int sign = 1;
      if (b.sign < 0) {
        if (q.den() % 2 == 0) return {0, std::numeric_limits<double>::quiet_NaN()};
        sign = (q.num() % 2 == 0) ? 1 : -1;
      }
      return {sign, q.to_double() * b.log_abs};
    }
    case NodeKind::Exp: return LogValue::from_log(eval_signed_log(e->lhs, r).value());
  }
  return {};
}

/// Natural log of the expression's value at r.
inline double eval_log(const WeightExprAst& e, double r) {
  const LogValue v = eval_signed_log(e, r);
  if (v.sign <= 0 || std::isnan(v.log_abs)) throw NonPositiveValue(r);
  return v.log_abs;
}

/// Plain double evaluation.
inline double evaluate(const WeightExprAst& e, double r) {
  switch (e->kind) {
    case NodeKind::Const: return e->value;
    case NodeKind::Var: return r;
    case NodeKind::Add: return evaluate(e->lhs, r) + evaluate(e->rhs, r);
    case NodeKind::Sub: return evaluate(e->lhs, r) - evaluate(e->rhs, r);
    case NodeKind::Mul: return evaluate(e->lhs, r) * evaluate(e->rhs, r);
    case NodeKind::Div: return evaluate(e->lhs, r) / evaluate(e->rhs, r);
    case NodeKind::Pow: {
      const double b = evaluate(e->lhs, r);
      const Rational q = e->exponent;
      if (b < 0 && q.den() % 2 == 1) {
        const double m = std::pow(-b, q.to_double());
        return q.num() % 2 == 0 ? m : -m;
      }
      return std::pow(b, q.to_double());
    }
    case NodeKind::Exp: return std::exp(evaluate(e->lhs, r));
  }
  return 0.0;
}

}  // namespace focklab::expr
