#include "liecanon/expr.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace liecanon {

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Tan: return "tan";
    case Fn::Cot: return "cot";
    case Fn::Csc: return "csc";
    case Fn::Arctan: return "arctan";
    case Fn::Arccot: return "arccot";
  }
  return "?";
}

// ---------------------------------------------------------------- raw nodes --

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return (h ^ v) * 1099511628211ULL + 0x9e3779b9;
}

std::vector<std::string> merge_syms(const std::vector<ExprP>& kids) {
  std::vector<std::string> out;
  for (const auto& k : kids) {
    std::vector<std::string> merged;
    merged.reserve(out.size() + k->syms.size());
    std::set_union(out.begin(), out.end(), k->syms.begin(), k->syms.end(),
                   std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

ExprP raw_num(const Rational& r) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Num;
  e->num = r;
  e->num.canonicalize();  // defend against callers passing un-reduced mpq values
  e->h = mix(1, rat_hash(e->num));
  return e;
}

ExprP raw_sym(std::string n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Sym;
  e->name = std::move(n);
  e->syms = {e->name};
  e->h = mix(3, std::hash<std::string>{}(e->name));
  return e;
}

ExprP raw_node(Kind k, std::vector<ExprP> kids, Fn f = Fn::Exp) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->fn = f;
  e->syms = merge_syms(kids);
  std::size_t h = mix(static_cast<std::size_t>(k) + 11,
                      k == Kind::Fun ? static_cast<std::size_t>(f) + 101 : 0);
  for (const auto& c : kids) h = mix(h, c->h);
  e->h = h;
  e->kids = std::move(kids);
  return e;
}

const ExprP& kZero() { static const ExprP e = raw_num(Rational(0)); return e; }
const ExprP& kOne() { static const ExprP e = raw_num(Rational(1)); return e; }
const ExprP& kPi() {
  static const ExprP e = [] {
    auto p = std::make_shared<Expr>();
    p->kind = Kind::Pi;
    p->h = mix(2, 0x314159);
    return p;
  }();
  return e;
}

int kind_rank(Kind k) {
  switch (k) {
    case Kind::Num: return 0;
    case Kind::Pi: return 1;
    case Kind::Sym: return 2;
    case Kind::Fun: return 3;
    case Kind::Pow: return 4;
    case Kind::Mul: return 5;
    case Kind::Add: return 6;
  }
  return 7;
}

struct CmpLess {
  bool operator()(const ExprP& a, const ExprP& b) const { return compare(a, b) < 0; }
};

Rational rat_floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rational(q);
}

}  // namespace

// ----------------------------------------------------------------- ordering --

int compare(const ExprP& a, const ExprP& b) {
  if (a.get() == b.get()) return 0;
  int ra = kind_rank(a->kind), rb = kind_rank(b->kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a->kind) {
    case Kind::Num: return cmp(a->num, b->num);
    case Kind::Pi: return 0;
    case Kind::Sym: return a->name.compare(b->name);
    case Kind::Fun: {
      if (a->fn != b->fn) return a->fn < b->fn ? -1 : 1;
      return compare(a->kids[0], b->kids[0]);
    }
    case Kind::Pow: {
      int c = compare(a->kids[0], b->kids[0]);
      if (c) return c;
      return compare(a->kids[1], b->kids[1]);
    }
    case Kind::Mul:
    case Kind::Add: {
      std::size_t n = std::min(a->kids.size(), b->kids.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a->kids[i], b->kids[i]);
        if (c) return c;
      }
      if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

bool equal(const ExprP& a, const ExprP& b) {
  if (a.get() == b.get()) return true;
  if (a->h != b->h || a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Num: return a->num == b->num;
    case Kind::Pi: return true;
    case Kind::Sym: return a->name == b->name;
    case Kind::Fun:
      if (a->fn != b->fn) return false;
      return equal(a->kids[0], b->kids[0]);
    default: {
      if (a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!equal(a->kids[i], b->kids[i])) return false;
      return true;
    }
  }
}

// ---------------------------------------------------------------- accessors --

bool is_num(const ExprP& e) { return e->kind == Kind::Num; }
bool is_zero(const ExprP& e) { return e->kind == Kind::Num && e->num == 0; }
bool is_one(const ExprP& e) { return e->kind == Kind::Num && e->num == 1; }

const Rational* as_num(const ExprP& e) {
  return e->kind == Kind::Num ? &e->num : nullptr;
}

std::optional<Rational> rational_value(const ExprP& e) {
  if (e->kind == Kind::Num) return e->num;
  return std::nullopt;
}

bool contains_sym(const ExprP& e, const std::string& v) {
  return std::binary_search(e->syms.begin(), e->syms.end(), v);
}

const std::vector<std::string>& free_vars(const ExprP& e) { return e->syms; }

std::set<std::string> free_var_set(const ExprP& e) {
  return std::set<std::string>(e->syms.begin(), e->syms.end());
}

std::pair<Rational, ExprP> split_coeff(const ExprP& term) {
  if (term->kind == Kind::Num) return {term->num, kOne()};
  if (term->kind == Kind::Mul && term->kids[0]->kind == Kind::Num) {
    if (term->kids.size() == 2) return {term->kids[0]->num, term->kids[1]};
    std::vector<ExprP> rest(term->kids.begin() + 1, term->kids.end());
    return {term->kids[0]->num, raw_node(Kind::Mul, std::move(rest))};
  }
  return {Rational(1), term};
}

std::pair<ExprP, ExprP> split_pow(const ExprP& f) {
  if (f->kind == Kind::Pow) return {f->kids[0], f->kids[1]};
  return {f, kOne()};
}

std::vector<ExprP> sum_terms(const ExprP& e) {
  if (e->kind == Kind::Add) return e->kids;
  return {e};
}

std::vector<ExprP> product_factors(const ExprP& e) {
  if (e->kind == Kind::Mul) return e->kids;
  return {e};
}

// ---------------------------------------------------------------- factories --

ExprP num(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c == 0) return kZero();
  if (c == 1) return kOne();
  return raw_num(c);
}

ExprP num(long n) { return num(Rational(n)); }

ExprP frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return num(r);
}

ExprP sym(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return raw_sym(name);
}

ExprP pi() { return kPi(); }

ExprP add(const ExprP& a, const ExprP& b) { return add(std::vector<ExprP>{a, b}); }
ExprP sub(const ExprP& a, const ExprP& b) { return add(a, neg(b)); }
ExprP neg(const ExprP& a) { return mul(num(-1L), a); }
ExprP mul(const ExprP& a, const ExprP& b) { return mul(std::vector<ExprP>{a, b}); }
ExprP mul(const ExprP& a, const ExprP& b, const ExprP& c) {
  return mul(std::vector<ExprP>{a, b, c});
}
ExprP div(const ExprP& a, const ExprP& b) { return mul(a, pow(b, -1L)); }
ExprP pow(const ExprP& base, long exponent) { return pow(base, num(exponent)); }
ExprP pow(const ExprP& base, const Rational& exponent) { return pow(base, num(exponent)); }
ExprP sqrt_of(const ExprP& a) { return pow(a, Rational(1, 2)); }

ExprP add(std::vector<ExprP> kids) {
  Rational constant(0);
  std::map<ExprP, Rational, CmpLess> terms;  // coefficient per coeff-free key
  std::vector<ExprP> work(std::move(kids));
  while (!work.empty()) {
    ExprP c = std::move(work.back());
    work.pop_back();
    if (c->kind == Kind::Add) {
      for (const auto& k : c->kids) work.push_back(k);
      continue;
    }
    if (c->kind == Kind::Num) {
      constant += c->num;
      continue;
    }
    auto [coef, key] = split_coeff(c);
    auto it = terms.find(key);
    if (it == terms.end())
      terms.emplace(key, coef);
    else
      it->second += coef;
  }
  std::vector<ExprP> out;
  if (constant != 0) out.push_back(num(constant));
  for (const auto& [key, coef] : terms) {
    if (coef == 0) continue;
    if (coef == 1) {
      out.push_back(key);
    } else if (key->kind == Kind::Mul) {
      std::vector<ExprP> f;
      f.reserve(key->kids.size() + 1);
      f.push_back(num(coef));
      f.insert(f.end(), key->kids.begin(), key->kids.end());
      out.push_back(raw_node(Kind::Mul, std::move(f)));
    } else {
      out.push_back(raw_node(Kind::Mul, {num(coef), key}));
    }
  }
  if (out.empty()) return kZero();
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), CmpLess{});
  return raw_node(Kind::Add, std::move(out));
}

ExprP mul(std::vector<ExprP> kids) {
  Rational coeff(1);
  // base -> (original factor, exponent terms); exponents summed at the end
  // (collects z^a * z^b -> z^(a+b), sound for principal powers because both
  // factors share Arg z).
  struct Collected {
    ExprP original;  // reused verbatim when nothing collected onto this base
    std::vector<ExprP> exps;
  };
  std::map<ExprP, Collected, CmpLess> powers;
  std::vector<ExprP> work(std::move(kids));
  while (!work.empty()) {
    ExprP c = std::move(work.back());
    work.pop_back();
    if (c->kind == Kind::Mul) {
      for (const auto& k : c->kids) work.push_back(k);
      continue;
    }
    if (c->kind == Kind::Num) {
      if (c->num == 0) return kZero();
      coeff *= c->num;
      continue;
    }
    auto [base, exp] = split_pow(c);
    auto& slot = powers[base];
    if (slot.exps.empty()) slot.original = c;
    slot.exps.push_back(exp);
  }
  std::vector<ExprP> factors;
  bool redo = false;
  for (auto& [base, slot] : powers) {
    if (slot.exps.size() == 1) {
      factors.push_back(slot.original);  // already normalized; do not re-derive
      continue;
    }
    ExprP e = add(slot.exps);
    if (is_zero(e)) continue;
    ExprP f = is_one(e) ? base : pow(base, e);
    // pow() may fold to a number or split into a product (exponent collapse,
    // radical extraction); those need another collection pass.
    if (f->kind == Kind::Num || f->kind == Kind::Mul) redo = true;
    factors.push_back(f);
  }
  if (redo) {
    factors.push_back(num(coeff));
    return mul(std::move(factors));
  }
  if (coeff == 0) return kZero();
  if (factors.empty()) return num(coeff);
  // A numeric coefficient on a bare sum distributes, so sums cancel
  // term-by-term at construction ((x+y) - (x+y) -> 0).
  if (factors.size() == 1 && coeff != 1 && factors[0]->kind == Kind::Add) {
    std::vector<ExprP> terms;
    terms.reserve(factors[0]->kids.size());
    ExprP c = num(coeff);
    for (const auto& t : factors[0]->kids) terms.push_back(mul(c, t));
    return add(std::move(terms));
  }
  if (factors.size() == 1 && coeff == 1) return factors[0];
  std::vector<ExprP> out;
  if (coeff != 1) out.push_back(num(coeff));
  out.insert(out.end(), factors.begin(), factors.end());
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), CmpLess{});
  return raw_node(Kind::Mul, std::move(out));
}

namespace {

// b^e for rational b not in {0, 1, -1} and non-integer rational e.
// Canonical shape: rational coefficient * products of n^r with n an integer
// q-th-power-free base > 1 and r in (0,1), * optional (-1)^r factor.
// The integer part of the exponent folds into the coefficient; denominator
// bases flip via d^(-r) = d^(-1) * d^(1-r).  Negative bases split off (-1)^r,
// sound for principal powers because Arg(-1) + Arg|b| = pi stays in (-pi, pi].
ExprP pow_of_rational_base(const Rational& b, const Rational& e) {
  Rational m = rat_floor(e);
  Rational r = e - m;
  Rational coeff = rat_pow(b, rat_to_int(m));
  bool negative = b < 0;
  Rational ab = negative ? Rational(-b) : b;
  unsigned long q = static_cast<unsigned long>(r.get_den().get_ui());
  auto [pn, rn] = int_nth_power_part(ab.get_num(), q);
  auto [pd, rd] = int_nth_power_part(ab.get_den(), q);
  long p = static_cast<long>(r.get_num().get_si());
  coeff *= rat_pow(Rational(pn, pd), p);
  std::vector<ExprP> fs;
  if (rn != 1) fs.push_back(raw_node(Kind::Pow, {num(Rational(rn)), num(r)}));
  if (rd != 1) {  // d^(-r) = d^(-1) * d^(1-r), keeping the exponent in (0,1)
    coeff /= Rational(rd);
    fs.push_back(raw_node(Kind::Pow, {num(Rational(rd)), num(Rational(1) - r)}));
  }
  if (negative) fs.push_back(raw_node(Kind::Pow, {num(Rational(-1)), num(r)}));
  fs.push_back(num(coeff));
  return mul(std::move(fs));
}

}  // namespace

ExprP pow(const ExprP& base, const ExprP& exponent) {
  if (exponent->kind == Kind::Num) {
    const Rational& e = exponent->num;
    if (e == 0) return kOne();
    if (e == 1) return base;
    if (base->kind == Kind::Num) {
      const Rational& b = base->num;
      if (b == 0) {
        if (e > 0) return kZero();
        return raw_node(Kind::Pow, {base, exponent});  // singular; kept for eval
      }
      if (b == 1) return kOne();
      if (rat_is_integer(e) && e.get_num().fits_slong_p())
        return num(rat_pow(b, rat_to_int(e)));
      if (!rat_is_integer(e) && e.get_den().fits_ulong_p() &&
          e.get_num().fits_slong_p()) {
        if (b == -1) {
          // (-1)^e = exp(i*pi*e) has period 2 in e: reduce into [0,2), then
          // fold the integer part into the sign so the exponent lands in (0,1).
          Rational r = e - Rational(2) * rat_floor(e / 2);
          if (r == 0) return kOne();
          if (r == 1) return num(Rational(-1));
          if (r > 1)
            return neg(raw_node(Kind::Pow, {base, num(r - 1)}));
          return raw_node(Kind::Pow, {base, num(r)});
        }
        return pow_of_rational_base(b, e);
      }
      return raw_node(Kind::Pow, {base, exponent});
    }
    if (rat_is_integer(e)) {
      if (base->kind == Kind::Mul) {
        // (a*b)^n = a^n * b^n: sound for integer n regardless of branches.
        std::vector<ExprP> fs;
        fs.reserve(base->kids.size());
        for (const auto& k : base->kids) fs.push_back(pow(k, exponent));
        return mul(std::move(fs));
      }
      if (base->kind == Kind::Pow) {
        // (z^a)^n = z^(a*n): sound for integer n.
        return pow(base->kids[0], mul(base->kids[1], exponent));
      }
    } else if (base->kind == Kind::Mul) {
      // (c*R)^s = c^s * R^s: sound for numeric c > 0 (Arg unchanged).
      auto [c, rest] = split_coeff(base);
      if (c > 0 && c != 1) return mul(pow(num(c), exponent), pow(rest, exponent));
    }
  }
  if (base->kind == Kind::Num && base->num == 1) return kOne();
  // exp(1)^s = exp(s) always (Log e = 1 exactly). Numeric s stays a power so
  // that e^c keeps the single canonical atom exp(1).
  if (base->kind == Kind::Fun && base->fn == Fn::Exp && is_one(base->kids[0]) &&
      exponent->kind != Kind::Num)
    return fun(Fn::Exp, exponent);
  return raw_node(Kind::Pow, {base, exponent});
}

// ------------------------------------------------------------ trigonometry --

namespace {

// arg == c*pi ?
std::optional<Rational> pi_multiple(const ExprP& arg) {
  if (arg->kind == Kind::Pi) return Rational(1);
  if (arg->kind == Kind::Mul && arg->kids.size() == 2 &&
      arg->kids[0]->kind == Kind::Num && arg->kids[1]->kind == Kind::Pi)
    return arg->kids[0]->num;
  return std::nullopt;
}

// Exact sin of s12*pi/12 for grid points whose sine lies in
// {0, +-1/2, +-sqrt2/2, +-sqrt3/2, +-1}; nullopt elsewhere.
std::optional<ExprP> sin_table(long s12) {
  s12 = ((s12 % 24) + 24) % 24;
  auto r2 = [] { return mul(frac(1, 2), pow(num(2L), Rational(1, 2))); };
  auto r3 = [] { return mul(frac(1, 2), pow(num(3L), Rational(1, 2))); };
  switch (s12) {
    case 0: case 12: return num(0L);
    case 2: case 10: return frac(1, 2);
    case 14: case 22: return frac(-1, 2);
    case 3: case 9: return r2();
    case 15: case 21: return neg(r2());
    case 4: case 8: return r3();
    case 16: case 20: return neg(r3());
    case 6: return num(1L);
    case 18: return num(-1L);
    default: return std::nullopt;
  }
}

std::optional<ExprP> trig_at_pi_multiple(Fn f, const Rational& c) {
  Rational s = c * 12;
  if (!rat_is_integer(s) || !s.get_num().fits_slong_p()) return std::nullopt;
  long s12 = rat_to_int(s);
  auto sn = sin_table(s12);
  auto cn = sin_table(s12 + 6);  // cos x = sin(x + pi/2)
  switch (f) {
    case Fn::Sin: return sn;
    case Fn::Cos: return cn;
    case Fn::Tan:
      if (sn && cn && !is_zero(*cn)) return div(*sn, *cn);
      return std::nullopt;
    case Fn::Cot:
      if (sn && cn && !is_zero(*sn)) return div(*cn, *sn);
      return std::nullopt;
    case Fn::Csc:
      if (sn && !is_zero(*sn)) return pow(*sn, -1L);
      return std::nullopt;
    default: return std::nullopt;
  }
}

// Deterministic sign of the leading coefficient, for parity normalization.
int leading_sign(const ExprP& e) {
  switch (e->kind) {
    case Kind::Num: return sgn(e->num);
    case Kind::Mul: return e->kids[0]->kind == Kind::Num ? sgn(e->kids[0]->num) : 1;
    case Kind::Add: return leading_sign(e->kids[0]);
    default: return 1;
  }
}

bool fn_is_odd(Fn f) {
  switch (f) {
    case Fn::Sin: case Fn::Tan: case Fn::Cot: case Fn::Csc:
    case Fn::Arctan: case Fn::Arccot: return true;
    default: return false;
  }
}

}  // namespace

ExprP fun(Fn f, const ExprP& arg) {
  switch (f) {
    case Fn::Exp: {
      if (is_zero(arg)) return kOne();
      if (arg->kind == Kind::Add) {
        // exp(a+b) = exp(a)exp(b): sound unconditionally.
        std::vector<ExprP> fs;
        fs.reserve(arg->kids.size());
        for (const auto& t : arg->kids) fs.push_back(fun(Fn::Exp, t));
        return mul(std::move(fs));
      }
      if (arg->kind == Kind::Num) {  // e^c kept on the single atom exp(1)
        static const ExprP kE = raw_node(Kind::Fun, {kOne()}, Fn::Exp);
        if (is_one(arg)) return kE;
        return raw_node(Kind::Pow, {kE, arg});
      }
      auto [c, rest] = split_coeff(arg);
      if (c != 1) return pow(fun(Fn::Exp, rest), num(c));
      if (arg->kind == Kind::Fun && arg->fn == Fn::Ln) return arg->kids[0];
      return raw_node(Kind::Fun, {arg}, Fn::Exp);
    }
    case Fn::Ln: {
      if (is_one(arg)) return kZero();
      // ln(e^c) = c for rational c: e^c is a positive real.
      if (arg->kind == Kind::Fun && arg->fn == Fn::Exp && is_one(arg->kids[0]))
        return kOne();
      if (arg->kind == Kind::Pow && arg->kids[1]->kind == Kind::Num &&
          arg->kids[0]->kind == Kind::Fun && arg->kids[0]->fn == Fn::Exp &&
          is_one(arg->kids[0]->kids[0]))
        return arg->kids[1];
      return raw_node(Kind::Fun, {arg}, Fn::Ln);
    }
    case Fn::Sin:
    case Fn::Cos:
    case Fn::Tan:
    case Fn::Cot:
    case Fn::Csc: {
      if (auto c = pi_multiple(arg)) {
        if (auto v = trig_at_pi_multiple(f, *c)) return *v;
      }
      if (is_zero(arg)) {
        if (f == Fn::Sin || f == Fn::Tan) return kZero();
        if (f == Fn::Cos) return kOne();
        // cot(0), csc(0): singular; node kept for eval to report.
      }
      if (fn_is_odd(f) && leading_sign(arg) < 0) return neg(fun(f, neg(arg)));
      if (f == Fn::Cos && leading_sign(arg) < 0) return fun(Fn::Cos, neg(arg));
      return raw_node(Kind::Fun, {arg}, f);
    }
    case Fn::Arctan:
    case Fn::Arccot: {
      if (f == Fn::Arctan && is_zero(arg)) return kZero();
      if (is_one(arg)) return mul(frac(1, 4), pi());
      if (leading_sign(arg) < 0) return neg(fun(f, neg(arg)));
      return raw_node(Kind::Fun, {arg}, f);
    }
  }
  return raw_node(Kind::Fun, {arg}, f);
}

// ------------------------------------------------------------ substitution --

namespace {

ExprP subst_impl(const ExprP& e, const std::map<std::string, ExprP>& subs,
                 std::unordered_map<const Expr*, ExprP>& memo) {
  bool touched = false;
  for (const auto& kv : subs)
    if (contains_sym(e, kv.first)) { touched = true; break; }
  if (!touched) return e;
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  ExprP out;
  switch (e->kind) {
    case Kind::Sym: {
      auto s = subs.find(e->name);
      out = s == subs.end() ? e : s->second;
      break;
    }
    case Kind::Add: {
      std::vector<ExprP> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(subst_impl(k, subs, memo));
      out = add(std::move(kids));
      break;
    }
    case Kind::Mul: {
      std::vector<ExprP> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(subst_impl(k, subs, memo));
      out = mul(std::move(kids));
      break;
    }
    case Kind::Pow:
      out = pow(subst_impl(e->kids[0], subs, memo),
                subst_impl(e->kids[1], subs, memo));
      break;
    case Kind::Fun:
      out = fun(e->fn, subst_impl(e->kids[0], subs, memo));
      break;
    default:
      out = e;
  }
  memo.emplace(e.get(), out);
  return out;
}

}  // namespace

ExprP substitute(const ExprP& e, const std::string& var, const ExprP& val) {
  std::map<std::string, ExprP> subs{{var, val}};
  return substitute(e, subs);
}

ExprP substitute(const ExprP& e, const std::map<std::string, ExprP>& subs) {
  std::unordered_map<const Expr*, ExprP> memo;
  return subst_impl(e, subs, memo);
}

ExprP substitute_subtree(const ExprP& e, const ExprP& pattern,
                         const ExprP& replacement) {
  if (equal(e, pattern)) return replacement;
  switch (e->kind) {
    case Kind::Add:
    case Kind::Mul: {
      std::vector<ExprP> kids;
      kids.reserve(e->kids.size());
      bool changed = false;
      for (const auto& k : e->kids) {
        ExprP r = substitute_subtree(k, pattern, replacement);
        changed |= r.get() != k.get();
        kids.push_back(std::move(r));
      }
      if (!changed) return e;
      return e->kind == Kind::Add ? add(std::move(kids)) : mul(std::move(kids));
    }
    case Kind::Pow: {
      ExprP b = substitute_subtree(e->kids[0], pattern, replacement);
      ExprP x = substitute_subtree(e->kids[1], pattern, replacement);
      if (b.get() == e->kids[0].get() && x.get() == e->kids[1].get()) return e;
      return pow(b, x);
    }
    case Kind::Fun: {
      ExprP a = substitute_subtree(e->kids[0], pattern, replacement);
      if (a.get() == e->kids[0].get()) return e;
      return fun(e->fn, a);
    }
    default:
      return e;
  }
}

// ------------------------------------------------------------------- render --

namespace {

// Parenthesization levels: sums < products < powers < atoms.
enum Prec { P_ADD = 0, P_MUL = 1, P_POW = 2, P_ATOM = 3 };

std::string render_prec(const ExprP& e, int parent_prec);

// A product displayed as numerator/denominator; negative rational exponents
// and the coefficient's denominator go below the bar.
std::string render_product(const Rational& coeff, const std::vector<ExprP>& factors,
                           int parent_prec) {
  std::vector<std::string> nums, dens;
  bool negative = coeff < 0;
  Rational acoeff = negative ? Rational(-coeff) : coeff;
  if (acoeff.get_num() != 1 || factors.empty())
    nums.push_back(acoeff.get_num().get_str());
  if (acoeff.get_den() != 1) dens.push_back(acoeff.get_den().get_str());
  for (const auto& f : factors) {
    auto [base, exp] = split_pow(f);
    bool exp_fold = base->kind == Kind::Fun && base->fn == Fn::Exp;
    if (const Rational* q = as_num(exp); q && *q < 0 && !exp_fold) {
      dens.push_back(render_prec(pow(base, Rational(-*q)), P_POW));
    } else {
      nums.push_back(render_prec(f, P_POW));
    }
  }
  std::string out;
  if (nums.empty())
    out = "1";
  else
    for (std::size_t i = 0; i < nums.size(); ++i) out += (i ? "*" : "") + nums[i];
  if (!dens.empty()) {
    bool simple =
        dens.size() == 1 && dens[0].find_first_of("*+-") == std::string::npos;
    if (simple) {
      out += "/" + dens[0];
    } else {
      out += "/(";
      for (std::size_t i = 0; i < dens.size(); ++i) out += (i ? "*" : "") + dens[i];
      out += ")";
    }
  }
  if (negative) {
    out = "-" + out;
    return parent_prec > P_ADD ? "(" + out + ")" : out;
  }
  bool multi = nums.size() + dens.size() > 1;
  return (parent_prec > P_MUL && multi) ? "(" + out + ")" : out;
}

std::string render_prec(const ExprP& e, int parent_prec) {
  switch (e->kind) {
    case Kind::Num: {
      const Rational& r = e->num;
      bool compound = r < 0 || r.get_den() != 1;
      std::string s = rat_to_string(r);
      return (compound && parent_prec > P_ADD) ? "(" + s + ")" : s;
    }
    case Kind::Pi: return "pi";
    case Kind::Sym: return e->name;
    case Kind::Fun:
      return std::string(fn_name(e->fn)) + "(" + render_prec(e->kids[0], P_ADD) + ")";
    case Kind::Pow: {
      const ExprP& base = e->kids[0];
      const ExprP& exp = e->kids[1];
      if (base->kind == Kind::Fun && base->fn == Fn::Exp && exp->kind == Kind::Num) {
        // exp(t)^c displays as exp(c*t); reparsing restores this node.
        ExprP shown = mul(exp, base->kids[0]);
        return "exp(" + render_prec(shown, P_ADD) + ")";
      }
      if (const Rational* q = as_num(exp)) {
        if (*q == Rational(1, 2)) return "sqrt(" + render_prec(base, P_ADD) + ")";
        if (*q < 0) return render_product(Rational(1), {e}, parent_prec);
      }
      std::string b = render_prec(base, P_ATOM);
      std::string x = render_prec(exp, P_ATOM);
      std::string s = b + "^" + x;
      return parent_prec >= P_ATOM ? "(" + s + ")" : s;
    }
    case Kind::Mul: {
      auto [coeff, rest] = split_coeff(e);
      std::vector<ExprP> factors =
          is_one(rest) ? std::vector<ExprP>{} : product_factors(rest);
      return render_product(coeff, factors, parent_prec);
    }
    case Kind::Add: {
      std::string out;
      bool first = true;
      for (const auto& t : e->kids) {
        auto [c, key] = split_coeff(t);
        bool negc = c < 0;
        std::string s;
        if (is_one(key)) {
          s = rat_to_string(negc ? Rational(-c) : c);
        } else {
          ExprP shown = negc ? mul(num(Rational(-c)), key) : t;
          s = render_prec(shown, P_MUL);
        }
        if (first) {
          out = negc ? "-" + s : s;
          first = false;
        } else {
          out += negc ? " - " : " + ";
          out += s;
        }
      }
      return parent_prec > P_ADD ? "(" + out + ")" : out;
    }
  }
  return "?";
}

}  // namespace

std::string render(const ExprP& e) { return render_prec(e, P_ADD); }

}  // namespace liecanon
