/*
 * Polynomial-ratio machinery: conversion between expressions and sparse
 * multivariate polynomials with rational exponents, exact arithmetic,
 * exact division, and ratio cancellation.
 */
#include "liecanon/poly.hpp"

#include <algorithm>

namespace liecanon {

// ---------------------------------------------------------------------------
// monomial order and arithmetic

int mono_cmp(const Mono& a, const Mono& b) {
  Rational da(0), db(0);
  for (auto& [atom, e] : a.p) da += e;
  for (auto& [atom, e] : b.p) db += e;
  if (da < db) return -1;
  if (db < da) return 1;
  std::size_t n = std::min(a.p.size(), b.p.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a.p[i].first, b.p[i].first);
    // a positive exponent on an earlier atom makes the monomial lex-greater;
    // this keeps the order multiplicative, which exact division relies on
    if (c != 0) return -c;
    if (a.p[i].second < b.p[i].second) return -1;
    if (b.p[i].second < a.p[i].second) return 1;
  }
  if (a.p.size() < b.p.size()) return -1;
  if (b.p.size() < a.p.size()) return 1;
  return 0;
}

bool mono_eq(const Mono& a, const Mono& b) { return mono_cmp(a, b) == 0; }

namespace {

// Rebuild every atom^exponent through the constructors, folding numeric parts
// into the coefficient and re-decomposing composite results.  Stabilizes in a
// couple of passes (exponent folding only ever shrinks the pair list).
void mono_fixup(Rational& c, Mono& m) {
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<std::pair<ExprP, Rational>> out;
    bool changed = false;
    for (auto& [atom, e] : m.p) {
      if (e == 0) {
        changed = true;
        continue;
      }
      ExprP r = pow(atom, num(e));
      auto [rc, rest] = split_coeff(r);
      if (rc != Rational(1)) {
        c *= rc;
        changed = true;
      }
      if (is_one(rest)) {
        changed = true;
        continue;
      }
      for (auto& f : product_factors(rest)) {
        auto [b2, e2] = split_pow(f);
        auto q = as_num(e2);
        std::pair<ExprP, Rational> entry =
            q ? std::pair<ExprP, Rational>{b2, *q} : std::pair<ExprP, Rational>{f, Rational(1)};
        if (!equal(entry.first, atom) || entry.second != e) changed = true;
        out.push_back(std::move(entry));
      }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
    // merge duplicate atoms (can reappear after decomposition)
    std::vector<std::pair<ExprP, Rational>> merged;
    for (auto& entry : out) {
      if (!merged.empty() && equal(merged.back().first, entry.first)) {
        merged.back().second += entry.second;
        changed = true;
      } else {
        merged.push_back(entry);
      }
    }
    m.p = std::move(merged);
    if (!changed) return;
    if (c == 0) {
      m.p.clear();
      return;
    }
  }
}

}  // namespace

void poly_add_term(Poly& p, const Rational& c, Mono m) {
  if (c == 0) return;
  Rational cc = c;
  mono_fixup(cc, m);
  if (cc == 0) return;
  auto it = p.t.find(m);
  if (it == p.t.end()) {
    p.t.emplace(std::move(m), cc);
  } else {
    it->second += cc;
    if (it->second == 0) p.t.erase(it);
  }
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  std::size_t i = 0, j = 0;
  while (i < a.p.size() || j < b.p.size()) {
    if (j == b.p.size()) {
      r.p.push_back(a.p[i++]);
    } else if (i == a.p.size()) {
      r.p.push_back(b.p[j++]);
    } else {
      int c = compare(a.p[i].first, b.p[j].first);
      if (c < 0) {
        r.p.push_back(a.p[i++]);
      } else if (c > 0) {
        r.p.push_back(b.p[j++]);
      } else {
        Rational e = a.p[i].second + b.p[j].second;
        if (e != 0) r.p.push_back({a.p[i].first, e});
        ++i, ++j;
      }
    }
  }
  return r;
}

// a / b when every atom of b appears in a with an exponent at least as large.
std::optional<Mono> mono_div(const Mono& a, const Mono& b) {
  Mono r;
  std::size_t i = 0, j = 0;
  while (i < a.p.size() || j < b.p.size()) {
    if (j == b.p.size()) {
      r.p.push_back(a.p[i++]);
      continue;
    }
    if (i == a.p.size()) return std::nullopt;
    int c = compare(a.p[i].first, b.p[j].first);
    if (c < 0) {
      r.p.push_back(a.p[i++]);
    } else if (c > 0) {
      return std::nullopt;
    } else {
      Rational e = a.p[i].second - b.p[j].second;
      if (e < 0) return std::nullopt;
      if (e != 0) r.p.push_back({a.p[i].first, e});
      ++i, ++j;
    }
  }
  return r;
}

Poly poly_const(const Rational& c) {
  Poly p;
  if (c != 0) p.t.emplace(Mono{}, c);
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (auto& [m, c] : b.t) {
    auto it = r.t.find(m);
    if (it == r.t.end()) {
      r.t.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) r.t.erase(it);
    }
  }
  return r;
}

Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r.t) c = -c;
  return r;
}

Poly poly_scale(const Poly& a, const Rational& c) {
  if (c == 0) return Poly{};
  Poly r = a;
  for (auto& [m, v] : r.t) v = v * c;
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ma, ca] : a.t)
    for (auto& [mb, cb] : b.t) poly_add_term(r, ca * cb, mono_mul(ma, mb));
  return r;
}

Poly poly_pow(const Poly& a, long n) {
  Poly r = poly_const(Rational(1));
  Poly base = a;
  long k = n;
  while (k > 0) {
    if (k & 1) r = poly_mul(r, base);
    k >>= 1;
    if (k > 0) base = poly_mul(base, base);
  }
  return r;
}

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.t.size() != b.t.size()) return false;
  auto ia = a.t.begin();
  auto ib = b.t.begin();
  for (; ia != a.t.end(); ++ia, ++ib) {
    if (!mono_eq(ia->first, ib->first) || ia->second != ib->second) return false;
  }
  return true;
}

std::optional<Poly> poly_divide(const Poly& a0, const Poly& b) {
  if (b.zero()) return std::nullopt;
  if (a0.zero()) return Poly{};
  Poly a = a0, q;
  const auto& blead = *b.t.rbegin();
  long guard = 1000 + 10 * static_cast<long>((a.t.size() + b.t.size()) * (a.t.size() + b.t.size()));
  while (!a.zero()) {
    if (--guard < 0) return std::nullopt;
    const auto alead = *a.t.rbegin();
    auto qm = mono_div(alead.first, blead.first);
    if (!qm) return std::nullopt;
    Rational qc = alead.second / blead.second;
    Poly term;
    poly_add_term(term, qc, *qm);
    if (term.zero()) return std::nullopt;
    q = poly_add(q, term);
    a = poly_add(a, poly_neg(poly_mul(term, b)));
  }
  return q;
}

// ---------------------------------------------------------------------------
// expression -> ratio

namespace {

RatPoly ratio_const(const Rational& c) { return {poly_const(c), poly_const(Rational(1))}; }

RatPoly ratio_atom(const ExprP& atom, const Rational& e) {
  Poly one = poly_const(Rational(1));
  if (e == 0) return {one, one};
  Poly p;
  Mono m;
  m.p.push_back({atom, e > 0 ? e : -e});
  poly_add_term(p, Rational(1), std::move(m));
  if (e > 0) return {p, one};
  return {one, p};
}

RatPoly ratio_mul(const RatPoly& a, const RatPoly& b) {
  return {poly_mul(a.num, b.num), poly_mul(a.den, b.den)};
}

RatPoly ratio_add(const RatPoly& a, const RatPoly& b) {
  if (poly_equal(a.den, b.den)) return {poly_add(a.num, b.num), a.den};
  return {poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)), poly_mul(a.den, b.den)};
}

RatPoly ratio_ipow(const RatPoly& a, const Rational& q) {
  long n = rat_to_int(q);
  if (n >= 0) return {poly_pow(a.num, n), poly_pow(a.den, n)};
  return {poly_pow(a.den, -n), poly_pow(a.num, -n)};
}

// Fractional powers distribute over products and merge with nested powers
// only in aggressive mode; these rewrites can cross branch cuts.
ExprP aggressive_normalize(const ExprP& e);

ExprP aggr_children(const ExprP& e) {
  switch (e->kind) {
    case Kind::Add: {
      std::vector<ExprP> ks;
      for (auto& k : e->kids) ks.push_back(aggressive_normalize(k));
      return add(ks);
    }
    case Kind::Mul: {
      std::vector<ExprP> ks;
      for (auto& k : e->kids) ks.push_back(aggressive_normalize(k));
      return mul(ks);
    }
    case Kind::Pow:
      return pow(aggressive_normalize(e->kids[0]), aggressive_normalize(e->kids[1]));
    case Kind::Fun:
      return fun(e->fn, aggressive_normalize(e->kids[0]));
    default:
      return e;
  }
}

ExprP aggressive_normalize(const ExprP& e) {
  ExprP r = aggr_children(e);
  if (r->kind == Kind::Pow) {
    const ExprP& b = r->kids[0];
    const ExprP& s = r->kids[1];
    if (b->kind == Kind::Mul) {
      std::vector<ExprP> fs;
      for (auto& f : b->kids) fs.push_back(pow(f, s));
      return aggressive_normalize(mul(fs));
    }
    if (b->kind == Kind::Pow) return aggressive_normalize(pow(b->kids[0], mul(b->kids[1], s)));
  }
  if (r->kind == Kind::Fun && r->fn == Fn::Ln) {
    const ExprP& a = r->kids[0];
    if (a->kind == Kind::Mul) {
      std::vector<ExprP> terms;
      for (auto& f : a->kids) terms.push_back(fun(Fn::Ln, f));
      return aggressive_normalize(add(terms));
    }
    if (a->kind == Kind::Pow) {
      return aggressive_normalize(mul(a->kids[1], fun(Fn::Ln, a->kids[0])));
    }
  }
  return r;
}

RatPoly to_ratio_impl(const ExprP& e, PolyMode mode) {
  switch (e->kind) {
    case Kind::Num:
      return ratio_const(e->num);
    case Kind::Pi:
    case Kind::Sym:
    case Kind::Fun:
      return ratio_atom(e, Rational(1));
    case Kind::Add: {
      RatPoly r = ratio_const(Rational(0));
      for (auto& k : e->kids) r = ratio_add(r, to_ratio_impl(k, mode));
      return r;
    }
    case Kind::Mul: {
      RatPoly r = ratio_const(Rational(1));
      for (auto& k : e->kids) r = ratio_mul(r, to_ratio_impl(k, mode));
      return r;
    }
    case Kind::Pow: {
      const ExprP& b = e->kids[0];
      const ExprP& s = e->kids[1];
      auto q = as_num(s);
      if (!q) return ratio_atom(e, Rational(1));  // symbolic exponent: opaque
      if (rat_is_integer(*q)) {
        RatPoly rb = to_ratio_impl(b, mode);
        if (*q < 0 && rb.num.zero()) return ratio_atom(e, Rational(1));  // structurally 1/0
        return ratio_ipow(rb, *q);
      }
      // fractional exponent: expand the integer part, keep base^frac opaque
      Rational fl = *q;
      mpz_class fi;
      mpz_fdiv_q(fi.get_mpz_t(), fl.get_num().get_mpz_t(), fl.get_den().get_mpz_t());
      Rational ipart(fi);
      Rational rem = *q - ipart;
      RatPoly r = ratio_atom(b, rem);
      if (ipart != 0) r = ratio_mul(r, ratio_ipow(to_ratio_impl(b, mode), ipart));
      return r;
    }
  }
  return ratio_const(Rational(0));
}

// common numeric content of a polynomial's coefficients (gcd of numerators /
// lcm of denominators), sign taken from the leading monomial
Rational poly_content(const Poly& p) {
  if (p.zero()) return Rational(0);
  mpz_class g(0), l(1);
  for (auto& [m, c] : p.t) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational content(g, l);
  content.canonicalize();
  if (p.t.rbegin()->second < 0) content = -content;
  return content;
}

}  // namespace

RatPoly to_ratio(const ExprP& e, PolyMode mode) {
  ExprP src = mode == PolyMode::Aggressive ? aggressive_normalize(e) : e;
  return to_ratio_impl(src, mode);
}

RatPoly ratio_cancel(RatPoly r) {
  if (r.den.zero()) return r;  // structurally singular; leave untouched
  if (r.num.zero()) return {Poly{}, poly_const(Rational(1))};
  // numeric content, normalized so the denominator's leading coefficient is +1-content
  Rational cn = poly_content(r.num);
  Rational cd = poly_content(r.den);
  r.num = poly_scale(r.num, Rational(1) / cn);
  r.den = poly_scale(r.den, Rational(1) / cd);
  Rational scalar = cn / cd;
  // common monomial factor: per atom, the least exponent present in every term
  auto common = [](const Poly& p) {
    Mono m = p.t.begin()->first;
    for (auto& [mm, c] : p.t) {
      Mono next;
      std::size_t i = 0, j = 0;
      while (i < m.p.size() && j < mm.p.size()) {
        int cc = compare(m.p[i].first, mm.p[j].first);
        if (cc < 0) {
          ++i;
        } else if (cc > 0) {
          ++j;
        } else {
          next.p.push_back({m.p[i].first, std::min(m.p[i].second, mm.p[j].second)});
          ++i, ++j;
        }
      }
      m = std::move(next);
      if (m.p.empty()) break;
    }
    return m;
  };
  Mono gn = common(r.num);
  Mono gd = common(r.den);
  Mono g;
  {
    std::size_t i = 0, j = 0;
    while (i < gn.p.size() && j < gd.p.size()) {
      int cc = compare(gn.p[i].first, gd.p[j].first);
      if (cc < 0) {
        ++i;
      } else if (cc > 0) {
        ++j;
      } else {
        g.p.push_back({gn.p[i].first, std::min(gn.p[i].second, gd.p[j].second)});
        ++i, ++j;
      }
    }
  }
  if (!g.p.empty()) {
    auto strip = [&g](const Poly& p) {
      Poly out;
      for (auto& [m, c] : p.t) {
        auto d = mono_div(m, g);
        out.t.emplace(*d, c);
      }
      return out;
    };
    r.num = strip(r.num);
    r.den = strip(r.den);
  }
  // exact quotient in either direction
  if (auto q = poly_divide(r.num, r.den)) {
    r.num = *q;
    r.den = poly_const(Rational(1));
  } else if (auto q2 = poly_divide(r.den, r.num)) {
    if (!q2->zero()) {
      r.den = *q2;
      r.num = poly_const(Rational(1));
    }
  }
  r.num = poly_scale(r.num, scalar);
  return r;
}

RatPoly ratio_normalized(const ExprP& e, PolyMode mode) { return ratio_cancel(to_ratio(e, mode)); }

ExprP from_poly(const Poly& p) {
  std::vector<ExprP> terms;
  for (auto& [m, c] : p.t) {
    std::vector<ExprP> fs;
    fs.push_back(num(c));
    for (auto& [atom, e] : m.p) fs.push_back(pow(atom, num(e)));
    terms.push_back(mul(fs));
  }
  return add(terms);
}

ExprP from_ratio(const RatPoly& r) {
  ExprP n = from_poly(r.num);
  ExprP d = from_poly(r.den);
  if (is_one(d)) return n;
  return div(n, d);
}

std::optional<std::vector<ExprP>> poly_coeffs(const ExprP& e, const std::string& var) {
  RatPoly r = ratio_normalized(e);
  for (auto& [m, c] : r.den.t)
    for (auto& [atom, ex] : m.p)
      if (contains_sym(atom, var)) return std::nullopt;
  std::map<long, Poly> buckets;
  long top = 0;
  for (auto& [m, c] : r.num.t) {
    long k = 0;
    Mono rest;
    for (auto& [atom, ex] : m.p) {
      if (atom->kind == Kind::Sym && atom->name == var) {
        if (!rat_is_integer(ex) || ex < 0) return std::nullopt;
        k = rat_to_int(ex);
      } else if (contains_sym(atom, var)) {
        return std::nullopt;
      } else {
        rest.p.push_back({atom, ex});
      }
    }
    auto it = buckets.find(k);
    if (it == buckets.end()) it = buckets.emplace(k, Poly{}).first;
    it->second.t.emplace(std::move(rest), c);
    top = std::max(top, k);
  }
  std::vector<ExprP> out(static_cast<std::size_t>(top) + 1, num(Rational(0)));
  for (auto& [k, p] : buckets)
    out[static_cast<std::size_t>(k)] = from_ratio(ratio_cancel({p, r.den}));
  return out;
}

}  // namespace liecanon
