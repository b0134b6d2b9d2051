#pragma once

#include <cstdint>
#include <vector>

#include "singmod/rational.hpp"

namespace singmod {

/// B_m for even m >= 0 (B_0 = 1, B_2 = 1/6, ...), in lowest terms.
///
/// Values are computed once by the exact convolution recurrence and cached;
/// the cache is shared across threads and only ever grows. Odd indices are
/// rejected: B_1 has two conventions and B_{odd>1} vanishes.
BigRational bernoulli(long m);

/// Product of the primes q with (q - 1) | m, for even m >= 2. Equals the
/// denominator of B_m.
BigInt von_staudt_clausen_denominator(long m);

/// v_p(q) for a prime p; infinity exactly when q == 0. Sign is ignored.
ExtendedValuation valuation(const BigRational& q, long p);
ExtendedValuation valuation(const BigInt& n, long p);

bool is_prime(long n);

/// Primes in [lo, hi], ascending.
std::vector<long> primes_in(long lo, long hi);

/// Legendre symbol (a / l) for an odd prime l, in {-1, 0, 1}.
int legendre(const BigInt& a, long l);

/// sigma_e(n) = sum of d^e over positive divisors d of n.
BigInt divisor_sigma(long n, unsigned long e);

/// Nonnegative remainder.
constexpr long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace singmod
