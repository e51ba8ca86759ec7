#include "liecanon/calculus.hpp"

#include "liecanon/simplify.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

namespace liecanon {

namespace {

using C = std::complex<double>;

bool finite(const C& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

C eval_impl(const ExprP& e, const Assignment& at,
            std::unordered_map<const Expr*, C>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  C out;
  switch (e->kind) {
    case Kind::Num:
      out = C(rat_to_double(e->num), 0.0);
      break;
    case Kind::Pi:
      out = C(M_PI, 0.0);
      break;
    case Kind::Sym: {
      auto v = at.find(e->name);
      if (v == at.end()) throw EvalError("unbound variable '" + e->name + "'");
      out = v->second;
      break;
    }
    case Kind::Add: {
      out = C(0.0, 0.0);
      for (const auto& k : e->kids) out += eval_impl(k, at, memo);
      break;
    }
    case Kind::Mul: {
      out = C(1.0, 0.0);
      for (const auto& k : e->kids) out *= eval_impl(k, at, memo);
      break;
    }
    case Kind::Pow: {
      C b = eval_impl(e->kids[0], at, memo);
      // Small integer exponents by repeated multiplication: exact sign
      // behavior for negative real bases, no spurious imaginary dust.
      if (const Rational* q = as_num(e->kids[1]);
          q && rat_is_integer(*q) && mpz_cmpabs_ui(q->get_num().get_mpz_t(), 64) <= 0) {
        long n = rat_to_int(*q);
        bool inv = n < 0;
        if (inv) n = -n;
        C acc(1.0, 0.0);
        for (long i = 0; i < n; ++i) acc *= b;
        out = inv ? C(1.0, 0.0) / acc : acc;
      } else {
        out = std::pow(b, eval_impl(e->kids[1], at, memo));
      }
      break;
    }
    case Kind::Fun: {
      C a = eval_impl(e->kids[0], at, memo);
      switch (e->fn) {
        case Fn::Exp: out = std::exp(a); break;
        case Fn::Ln: out = std::log(a); break;
        case Fn::Sin: out = std::sin(a); break;
        case Fn::Cos: out = std::cos(a); break;
        case Fn::Tan: out = std::tan(a); break;
        case Fn::Cot: out = std::cos(a) / std::sin(a); break;
        case Fn::Csc: out = C(1.0, 0.0) / std::sin(a); break;
        case Fn::Arctan: out = std::atan(a); break;
        case Fn::Arccot: out = std::atan(C(1.0, 0.0) / a); break;  // odd convention
      }
      break;
    }
  }
  memo.emplace(e.get(), out);
  return out;
}

}  // namespace

std::complex<double> eval_at(const ExprP& e, const Assignment& at) {
  std::unordered_map<const Expr*, C> memo;
  return eval_impl(e, at, memo);
}

bool equivalent(const ExprP& a, const ExprP& b, const EquivOptions& opts) {
  if (equal(a, b)) return true;
  if (is_zero(sub(a, b))) return true;
  if (is_zero(simplify(sub(a, b)))) return true;

  std::vector<std::string> vars;  // sorted union: deterministic draw order
  {
    const auto& va = free_vars(a);
    const auto& vb = free_vars(b);
    std::set_union(va.begin(), va.end(), vb.begin(), vb.end(),
                   std::back_inserter(vars));
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int points = vars.empty() ? 1 : std::max(opts.points, 1);
  const long max_attempts = 200L * std::max(opts.points, 1);

  int accepted = 0;
  for (long attempt = 0; accepted < points; ++attempt) {
    if (attempt >= max_attempts)
      throw EvalError("equivalence check: could not find enough regular sample points");
    Assignment at;
    for (const auto& v : vars) {
      double t = unif(rng);
      double x;
      if (opts.use_negative && t < 0.5) {
        double u = t * 2.0;
        x = opts.neg_lo + u * (opts.neg_hi - opts.neg_lo);
      } else {
        double u = opts.use_negative ? (t - 0.5) * 2.0 : t;
        x = opts.pos_lo + u * (opts.pos_hi - opts.pos_lo);
      }
      at.emplace(v, C(x, 0.0));
    }
    C va, vb;
    try {
      va = eval_at(a, at);
      vb = eval_at(b, at);
    } catch (const EvalError&) {
      throw;  // unbound variable: a caller bug, not a singular sample
    }
    if (!finite(va) || !finite(vb)) continue;  // singular point: resample
    double scale = 1.0 + std::abs(va);
    if (std::abs(va - vb) >= opts.tol * scale) return false;
    ++accepted;
  }
  return true;
}

bool equivalent(const ExprP& a, const ExprP& b, double tol, int points,
                std::uint64_t seed) {
  EquivOptions o;
  o.tol = tol;
  o.points = points;
  o.seed = seed;
  return equivalent(a, b, o);
}

}  // namespace liecanon
