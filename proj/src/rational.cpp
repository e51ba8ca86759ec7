#include "liecanon/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace liecanon {

Rational rat_from_string(const std::string& s) {
  // mpq_class's own parser accepts hex and whitespace; be stricter.
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw std::invalid_argument("malformed rational literal: " + s);
  bool seen_slash = false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/' && !seen_slash && j + 1 < s.size()) {
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw std::invalid_argument("malformed rational literal: " + s);
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rational& r) { return r.get_str(); }

double rat_to_double(const Rational& r) { return r.get_d(); }

bool rat_is_integer(const Rational& r) { return r.get_den() == 1; }

std::int64_t rat_to_int(const Rational& r) {
  if (!rat_is_integer(r)) throw std::invalid_argument("rat_to_int: not an integer");
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("rat_to_int: out of range");
  return static_cast<std::int64_t>(r.get_num().get_si());
}

Rational rat_pow(const Rational& r, std::int64_t n) {
  if (n == 0) return Rational(1);
  bool inv = n < 0;
  unsigned long e = static_cast<unsigned long>(inv ? -n : n);
  if (inv && r == 0) throw std::domain_error("rat_pow: 0 to a negative power");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), r.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), r.get_den().get_mpz_t(), e);
  Rational out = inv ? Rational(den, num) : Rational(num, den);
  out.canonicalize();
  return out;
}

std::optional<mpz_class> int_nth_root_exact(const mpz_class& z, unsigned long n) {
  if (z < 0) return std::nullopt;
  mpz_class root;
  int exact = mpz_root(root.get_mpz_t(), z.get_mpz_t(), n);
  if (exact) return root;
  return std::nullopt;
}

std::pair<mpz_class, mpz_class> int_nth_power_part(const mpz_class& z, unsigned long n) {
  // Trial division by small primes is plenty for the magnitudes seen here.
  mpz_class rest = z, part = 1;
  if (auto r = int_nth_root_exact(z, n)) return {*r, mpz_class(1)};
  static const unsigned small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                          31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                          73, 79, 83, 89, 97};
  for (unsigned p : small_primes) {
    unsigned count = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++count;
    }
    unsigned keep = count / n;  // p^(n*keep) extractable
    if (keep) {
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, keep);
      part *= pk;
    }
    unsigned rem = count % n;
    if (rem) {
      mpz_class pr;
      mpz_ui_pow_ui(pr.get_mpz_t(), p, rem);
      rest *= pr;
    }
  }
  return {part, rest};
}

std::optional<Rational> rationalize(double x, unsigned long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  bool neg = x < 0;
  double a = std::fabs(x);
  // Continued-fraction convergents p/q of a.
  unsigned long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = a;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 9e18) break;
    unsigned long ai = static_cast<unsigned long>(fl);
    // Overflow-safe advance.
    if (q1 != 0 && ai > (max_den * 4 + q0) / q1 + 1) {
      // Next convergent would blow the denominator bound; stop.
      break;
    }
    unsigned long p2 = ai * p1 + p0;
    unsigned long q2 = ai * q1 + q0;
    if (q2 > max_den * 4 && q1 != 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-12) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return std::nullopt;
  if (q1 > max_den) {
    if (q0 == 0 || q0 > max_den) return std::nullopt;
    p1 = p0;
    q1 = q0;
  }
  Rational r(static_cast<long>(p1), static_cast<long>(q1));
  r.canonicalize();
  if (neg) r = -r;
  if (std::fabs(rat_to_double(r) - x) > tol * (1.0 + std::fabs(x))) return std::nullopt;
  return r;
}

std::size_t rat_hash(const Rational& r) {
  // Cheap limb mix; collisions are resolved by structural comparison.
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](const mpz_class& z) {
    const mp_limb_t* limbs = mpz_limbs_read(z.get_mpz_t());
    long n = mpz_size(z.get_mpz_t());
    h ^= static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) + 0x1234567;
    for (long i = 0; i < n; ++i) h = h * 1099511628211ULL ^ static_cast<std::size_t>(limbs[i]);
  };
  mix(r.get_num());
  mix(r.get_den());
  return h;
}

}  // namespace liecanon
