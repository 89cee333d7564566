#include "polywitt/integer.hpp"

#include "polywitt/errors.hpp"

namespace polywitt {

Integer binomial(const Integer& n, unsigned long k) {
  if (n >= 0) {
    Integer result;
    mpz_bin_ui(result.get_mpz_t(), n.get_mpz_t(), k);
    return result;
  }
  // C(n, k) = (-1)^k C(k - n - 1, k) for negative n
  Integer flipped = Integer(static_cast<long>(k)) - n - 1;
  Integer result;
  mpz_bin_ui(result.get_mpz_t(), flipped.get_mpz_t(), k);
  return (k % 2 == 0) ? result : Integer(-result);
}

Integer factorial(unsigned long n) {
  Integer result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Integer power(const Integer& base, unsigned long exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Integer parse_integer(const std::string& text) {
  Integer value;
  if (text.empty() || value.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
    throw AlgebraError(ErrorCode::MalformedInput, "not an integer literal: '" + text + "'");
  return value;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw AlgebraError(ErrorCode::MalformedInput, "zero denominator in '" + text + "'");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> result;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) result.push_back(d);
  return result;
}

}  // namespace polywitt
