#include "singmod/arith.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

namespace singmod {
namespace {

// Full table B_0..B_n including B_1 = -1/2 and the vanishing odd values,
// which the recurrence needs.
class BernoulliCache {
 public:
  BigRational get(long m) {
    std::lock_guard lock(mutex_);
    while (static_cast<long>(table_.size()) <= m) extend();
    return table_[static_cast<std::size_t>(m)];
  }

 private:
  // B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j
  void extend() {
    const long n = static_cast<long>(table_.size());
    if (n == 0) {
      table_.emplace_back(1);
      return;
    }
    if (n > 1 && n % 2 == 1) {
      table_.emplace_back(0);
      return;
    }
    BigRational sum(0);
    BigInt binom(1);  // C(n+1, 0)
    for (long j = 0; j < n; ++j) {
      if (!table_[static_cast<std::size_t>(j)].is_zero()) {
        sum += BigRational(binom) * table_[static_cast<std::size_t>(j)];
      }
      binom = binom * (n + 1 - j) / (j + 1);
    }
    table_.push_back(-sum / BigRational(n + 1));
  }

  std::mutex mutex_;
  std::vector<BigRational> table_;
};

BernoulliCache& cache() {
  static BernoulliCache instance;
  return instance;
}

void require_prime(long p, const char* where) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::string(where) + ": " + std::to_string(p) + " is not prime");
  }
}

}  // namespace

BigRational bernoulli(long m) {
  if (m < 0) throw std::invalid_argument("bernoulli: negative index " + std::to_string(m));
  if (m % 2 != 0) {
    throw std::invalid_argument("bernoulli: only even indices are supported, got " +
                                std::to_string(m));
  }
  return cache().get(m);
}

BigInt von_staudt_clausen_denominator(long m) {
  if (m < 2 || m % 2 != 0) {
    throw std::invalid_argument("von_staudt_clausen_denominator: need even m >= 2, got " +
                                std::to_string(m));
  }
  BigInt product(1);
  for (long d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    if (is_prime(d + 1)) product *= d + 1;
    const long e = m / d;
    if (e != d && is_prime(e + 1)) product *= e + 1;
  }
  return product;
}

ExtendedValuation valuation(const BigInt& n, long p) {
  require_prime(p, "valuation");
  if (n == 0) return ExtendedValuation::infinity();
  BigInt rest;
  const BigInt prime(p);
  const auto count = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
  return ExtendedValuation(static_cast<long>(count));
}

ExtendedValuation valuation(const BigRational& q, long p) {
  require_prime(p, "valuation");
  if (q.is_zero()) return ExtendedValuation::infinity();
  return ExtendedValuation(valuation(q.numerator(), p).value() -
                           valuation(q.denominator(), p).value());
}

bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (long d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<long> primes_in(long lo, long hi) {
  std::vector<long> out;
  for (long n = std::max(lo, 2L); n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

int legendre(const BigInt& a, long l) {
  if (l < 3 || !is_prime(l)) {
    throw std::invalid_argument("legendre: modulus must be an odd prime, got " + std::to_string(l));
  }
  const BigInt modulus(l);
  return mpz_legendre(a.get_mpz_t(), modulus.get_mpz_t());
}

BigInt divisor_sigma(long n, unsigned long e) {
  if (n <= 0) throw std::invalid_argument("divisor_sigma: need n >= 1");
  BigInt total(0);
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    total += power(BigInt(d), e);
    const long f = n / d;
    if (f != d) total += power(BigInt(f), e);
  }
  return total;
}

}  // namespace singmod
