#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace singmod {

using BigInt = mpz_class;

// Exact rational number, always stored in lowest terms with a positive
// denominator. Thin value wrapper over GMP's mpq_class.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& value) : q_(value) {}  // NOLINT
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "a" or "a/b" in decimal.
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string str() const { return q_.get_str(); }
  const mpq_class& raw() const { return q_; }

  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.q_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.str(); }

 private:
  mpq_class q_;
};

// Integer power, exponent may be negative (base must then be nonzero).
BigRational power(const BigRational& base, long exponent);
BigInt power(const BigInt& base, unsigned long exponent);

// p-adic valuation taking values in Z ∪ {∞}.
class ExtendedValuation {
 public:
  constexpr ExtendedValuation() = default;  // ∞
  constexpr explicit ExtendedValuation(long value) : value_(value) {}
  static constexpr ExtendedValuation infinity() { return ExtendedValuation(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  // Precondition: finite.
  long value() const;

  std::string str() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

  friend constexpr bool operator==(const ExtendedValuation&, const ExtendedValuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const ExtendedValuation& a,
                                                    const ExtendedValuation& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() == b.is_infinite()
                 ? std::strong_ordering::equal
                 : (a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less);
    }
    return *a.value_ <=> *b.value_;
  }
  friend ExtendedValuation operator+(const ExtendedValuation& a, const ExtendedValuation& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtendedValuation(*a.value_ + *b.value_);
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtendedValuation& v) {
    return os << v.str();
  }

 private:
  std::optional<long> value_;
};

}  // namespace singmod
