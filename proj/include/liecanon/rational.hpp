/*
 * Exact rational scalars used throughout the expression kernel.
 *
 * Thin utility layer over GMP's mpq_class: parsing/printing, hashing,
 * integer tests, exact powers and roots, and continued-fraction
 * reconstruction of rationals from doubles (denominator-bounded).
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace liecanon {

using Rational = mpq_class;

// Parse "p", "-p", "p/q". Throws std::invalid_argument on malformed input or q=0.
Rational rat_from_string(const std::string& s);

// "p" when q==1, else "p/q" (canonical sign: q > 0).
std::string rat_to_string(const Rational& r);

double rat_to_double(const Rational& r);

bool rat_is_integer(const Rational& r);

// Requires rat_is_integer and magnitude < 2^62.
std::int64_t rat_to_int(const Rational& r);

// r^n for integer n (n may be negative; requires r != 0 then).
Rational rat_pow(const Rational& r, std::int64_t n);

// Exact n-th root of a non-negative integer if it exists.
std::optional<mpz_class> int_nth_root_exact(const mpz_class& z, unsigned long n);

// Largest a with a^n | z (z > 0): returns (a, z / a^n).
std::pair<mpz_class, mpz_class> int_nth_power_part(const mpz_class& z, unsigned long n);

// Nearest rational with denominator <= max_den via continued fractions;
// nullopt when |x| is not finite or no convergent lands within tol of x.
std::optional<Rational> rationalize(double x, unsigned long max_den, double tol = 1e-6);

std::size_t rat_hash(const Rational& r);

}  // namespace liecanon
