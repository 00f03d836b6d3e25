#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ultranorm {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

/// Parses "num/den", "num" or "-num/den". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Always renders as "num/den" (den = 1 included).
std::string to_string(const Rational& x);

/// p-adic valuation of a nonzero integer / rational.
long valuation(const Integer& x, unsigned long p);
long valuation(const Rational& x, unsigned long p);

bool is_prime(unsigned long n);
unsigned long next_prime(unsigned long n);

/// x^e for integer e (e < 0 requires x != 0).
Rational pow(const Rational& x, long e);

/// Distinct prime factors of |x| (trial division; x != 0).
std::vector<unsigned long> prime_support(const Integer& x);

}  // namespace ultranorm
