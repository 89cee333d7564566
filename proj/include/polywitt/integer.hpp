#pragma once

// Arbitrary-precision integer helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace polywitt {

using Integer = mpz_class;
using Rational = mpq_class;

Integer binomial(const Integer& n, unsigned long k);  // generalized: n may be negative
Integer factorial(unsigned long n);
Integer power(const Integer& base, unsigned long exponent);
bool is_prime(std::uint64_t n);

/// Parses a decimal integer ("-12") or fraction ("3/4"); throws on malformed input.
Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

inline std::string to_string(const Integer& value) { return value.get_str(); }
inline std::string to_string(const Rational& value) { return value.get_str(); }

/// Divisors of n in increasing order.
std::vector<unsigned> divisors(unsigned n);

}  // namespace polywitt
