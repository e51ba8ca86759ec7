#include "liecanon/calculus.hpp"

#include <unordered_map>

namespace liecanon {

namespace {

ExprP diff_impl(const ExprP& e, const std::string& var,
                std::unordered_map<const Expr*, ExprP>& memo) {
  if (!contains_sym(e, var)) return num(0L);
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  ExprP out;
  switch (e->kind) {
    case Kind::Sym:
      out = num(1L);  // contains_sym guarantees e->name == var
      break;
    case Kind::Add: {
      std::vector<ExprP> terms;
      terms.reserve(e->kids.size());
      for (const auto& k : e->kids) terms.push_back(diff_impl(k, var, memo));
      out = add(std::move(terms));
      break;
    }
    case Kind::Mul: {
      // product rule over the factors that depend on var
      std::vector<ExprP> terms;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (!contains_sym(e->kids[i], var)) continue;
        std::vector<ExprP> fs;
        fs.reserve(e->kids.size());
        fs.push_back(diff_impl(e->kids[i], var, memo));
        for (std::size_t j = 0; j < e->kids.size(); ++j)
          if (j != i) fs.push_back(e->kids[j]);
        terms.push_back(mul(std::move(fs)));
      }
      out = add(std::move(terms));
      break;
    }
    case Kind::Pow: {
      const ExprP& b = e->kids[0];
      const ExprP& x = e->kids[1];
      bool bv = contains_sym(b, var), xv = contains_sym(x, var);
      if (bv && !xv) {
        // d(b^c) = c * b^(c-1) * b'
        out = mul(x, pow(b, sub(x, num(1L))), diff_impl(b, var, memo));
      } else if (!bv && xv) {
        // d(c^x) = c^x * ln(c) * x'
        out = mul(e, fun(Fn::Ln, b), diff_impl(x, var, memo));
      } else {
        // d(b^x) = b^x * (x' ln b + x b'/b)
        out = mul(e, add(mul(diff_impl(x, var, memo), fun(Fn::Ln, b)),
                         mul(x, div(diff_impl(b, var, memo), b))));
      }
      break;
    }
    case Kind::Fun: {
      const ExprP& a = e->kids[0];
      ExprP da = diff_impl(a, var, memo);
      ExprP body;
      switch (e->fn) {
        case Fn::Exp: body = e; break;
        case Fn::Ln: body = pow(a, -1L); break;
        case Fn::Sin: body = fun(Fn::Cos, a); break;
        case Fn::Cos: body = neg(fun(Fn::Sin, a)); break;
        case Fn::Tan: body = add(num(1L), pow(fun(Fn::Tan, a), 2L)); break;
        case Fn::Cot: body = neg(add(num(1L), pow(fun(Fn::Cot, a), 2L))); break;
        case Fn::Csc: body = neg(mul(fun(Fn::Csc, a), fun(Fn::Cot, a))); break;
        case Fn::Arctan: body = pow(add(num(1L), pow(a, 2L)), -1L); break;
        case Fn::Arccot: body = neg(pow(add(num(1L), pow(a, 2L)), -1L)); break;
      }
      out = mul(body, da);
      break;
    }
    default:
      out = num(0L);
  }
  memo.emplace(e.get(), out);
  return out;
}

}  // namespace

ExprP differentiate(const ExprP& e, const std::string& var) {
  std::unordered_map<const Expr*, ExprP> memo;
  return diff_impl(e, var, memo);
}

}  // namespace liecanon
