#include "liecanon/parse.hpp"

#include <cctype>
#include <optional>

namespace liecanon {

ParseError::ParseError(const std::string& msg, std::size_t off)
    : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"),
      offset(off) {}

namespace {

std::optional<Fn> fn_by_name(const std::string& n) {
  if (n == "exp") return Fn::Exp;
  if (n == "ln") return Fn::Ln;
  if (n == "sin") return Fn::Sin;
  if (n == "cos") return Fn::Cos;
  if (n == "tan") return Fn::Tan;
  if (n == "cot") return Fn::Cot;
  if (n == "csc") return Fn::Csc;
  if (n == "arctan") return Fn::Arctan;
  if (n == "arccot") return Fn::Arccot;
  return std::nullopt;
}

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  ExprP parse_sum() {
    ExprP e = parse_product();
    for (;;) {
      if (eat('+'))
        e = add(e, parse_product());
      else if (eat('-'))
        e = sub(e, parse_product());
      else
        return e;
    }
  }

  ExprP parse_product() {
    ExprP e = parse_unary();
    for (;;) {
      if (eat('*'))
        e = mul(e, parse_unary());
      else if (eat('/'))
        e = div(e, parse_unary());
      else
        return e;
    }
  }

  ExprP parse_unary() {
    if (eat('-')) return neg(parse_unary());
    return parse_power();
  }

  ExprP parse_power() {
    ExprP b = parse_atom();
    if (eat('^')) return pow(b, parse_unary());
    return b;
  }

  ExprP parse_atom() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input", i);
    char c = s[i];
    if (c == '(') {
      ++i;
      ExprP e = parse_sum();
      if (!eat(')')) fail("expected ')'", i);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.')
        fail("decimal literals are not supported; write p/q", i);
      mpz_class z(s.substr(start, i - start));
      return num(Rational(z));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      std::string name = s.substr(start, i - start);
      skip_ws();
      if (i < s.size() && s[i] == '(') {
        ++i;
        ExprP arg = parse_sum();
        if (!eat(')')) fail("expected ')'", i);
        if (name == "sqrt") return sqrt_of(arg);
        if (auto f = fn_by_name(name)) return fun(*f, arg);
        fail("unknown function '" + name + "'", start);
      }
      if (name == "pi") return pi();
      return sym(name);
    }
    fail(std::string("unexpected character '") + c + "'", i);
  }
};

}  // namespace

ExprP parse(const std::string& text) {
  Parser p(text);
  ExprP e = p.parse_sum();
  p.skip_ws();
  if (p.i != text.size()) p.fail("unexpected trailing input", p.i);
  return e;
}

}  // namespace liecanon
