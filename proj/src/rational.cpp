#include "singmod/rational.hpp"

#include <stdexcept>
#include <string>

namespace singmod {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(s, 10));
    return BigRational(BigInt(s.substr(0, slash), 10), BigInt(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

BigRational power(const BigRational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw std::domain_error("power: zero to a negative exponent");
    return BigRational(1) / power(base, -exponent);
  }
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return BigRational(num, den);
}

BigInt power(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

long ExtendedValuation::value() const {
  if (!value_) throw std::logic_error("value() of an infinite valuation");
  return *value_;
}

}  // namespace singmod
