/*
 * simplify / aggressive_simplify: bottom-up argument normalization, the
 * ln/exp and Pythagorean identity tables, and ratio renormalization.
 */
#include "liecanon/simplify.hpp"

#include "liecanon/poly.hpp"

#include <algorithm>

namespace liecanon {

namespace {

Mono mono_of(const ExprP& atom, const Rational& e) {
  Mono m;
  m.p.push_back({atom, e});
  return m;
}

// Replace c*cos(t)^2*R by c*R - c*sin(t)^2*R whenever the sin(t)^2*R partner
// term is present.  Total cos-degree strictly decreases, so this terminates.
void pythagoras(Poly& p) {
  for (int guard = 0; guard < 256; ++guard) {
    bool did = false;
    for (auto it = p.t.begin(); it != p.t.end(); ++it) {
      const Mono m = it->first;
      const Rational c = it->second;
      for (auto& [atom, e] : m.p) {
        if (atom->kind != Kind::Fun || atom->fn != Fn::Cos || e < 2) continue;
        ExprP sn = fun(Fn::Sin, atom->kids[0]);
        Mono delta;
        delta.p.push_back({atom, Rational(-2)});
        delta.p.push_back({sn, Rational(2)});
        std::sort(delta.p.begin(), delta.p.end(),
                  [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
        Mono partner = mono_mul(m, delta);
        if (p.t.find(partner) == p.t.end()) continue;
        auto rest = mono_div(m, mono_of(atom, Rational(2)));
        p.t.erase(m);
        poly_add_term(p, -c, partner);
        poly_add_term(p, c, *rest);
        did = true;
        break;
      }
      if (did) break;
    }
    if (!did) return;
  }
}

ExprP ln_table(const ExprP& r) {
  if (r->kind != Kind::Fun || r->fn != Fn::Ln) return r;
  const ExprP& a = r->kids[0];
  auto exp_log = [](const ExprP& f) -> ExprP {
    // ln of a factor known positive for real arguments, or nullptr
    if (f->kind == Kind::Fun && f->fn == Fn::Exp) return f->kids[0];
    if (f->kind == Kind::Pow && f->kids[0]->kind == Kind::Fun && f->kids[0]->fn == Fn::Exp)
      return mul(f->kids[1], f->kids[0]->kids[0]);
    if (auto q = as_num(f); q && *q > 0 && *q != 1) return fun(Fn::Ln, f);
    return nullptr;
  };
  if (ExprP t = exp_log(a)) return t;
  if (a->kind == Kind::Mul) {
    std::vector<ExprP> terms;
    for (auto& f : a->kids) {
      ExprP t = exp_log(f);
      if (!t) return r;
      terms.push_back(t);
    }
    return add(terms);
  }
  return r;
}

ExprP ratio_pass(const ExprP& e, PolyMode mode) {
  RatPoly r = to_ratio(e, mode);
  pythagoras(r.num);
  pythagoras(r.den);
  return from_ratio(ratio_cancel(std::move(r)));
}

ExprP walk(const ExprP& e, PolyMode mode) {
  switch (e->kind) {
    case Kind::Num:
    case Kind::Pi:
    case Kind::Sym:
      return e;
    case Kind::Add: {
      std::vector<ExprP> ks;
      for (auto& k : e->kids) ks.push_back(walk(k, mode));
      return add(ks);
    }
    case Kind::Mul: {
      std::vector<ExprP> ks;
      for (auto& k : e->kids) ks.push_back(walk(k, mode));
      return mul(ks);
    }
    case Kind::Pow:
      return pow(walk(e->kids[0], mode), walk(e->kids[1], mode));
    case Kind::Fun: {
      ExprP arg = ratio_pass(walk(e->kids[0], mode), mode);
      return ln_table(fun(e->fn, arg));
    }
  }
  return e;
}

}  // namespace

ExprP simplify(const ExprP& e) { return ratio_pass(walk(e, PolyMode::Safe), PolyMode::Safe); }

ExprP aggressive_simplify(const ExprP& e) {
  return ratio_pass(walk(e, PolyMode::Aggressive), PolyMode::Aggressive);
}

}  // namespace liecanon
