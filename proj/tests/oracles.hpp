#pragma once

// Independent reference implementations used only by tests.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

// Akiyama-Tanigawa: B_n with B_1 = +1/2.
inline mpq_class bernoulli(long n) {
  std::vector<mpq_class> a(static_cast<std::size_t>(n) + 1);
  for (long m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (long j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return a[0];
}

// Memoized wrapper; tests call this in tight loops.
inline const mpq_class& bernoulli_cached(long n) {
  static std::map<long, mpq_class> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, bernoulli(n)).first;
  return it->second;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Exponent of p in a nonzero integer, by repeated division.
inline long valuation(mpz_class n, long p) {
  if (n < 0) n = -n;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long valuation(const mpq_class& q, long p) {
  return valuation(mpz_class(q.get_num()), p) - valuation(mpz_class(q.get_den()), p);
}

inline mpz_class sigma(long n, unsigned e) {
  mpz_class s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0) {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), e);
      s += t;
    }
  }
  return s;
}

// Legendre symbol by listing the squares mod l.
inline int legendre(long a, long l) {
  a = ((a % l) + l) % l;
  if (a == 0) return 0;
  for (long x = 1; x < l; ++x) {
    if (x * x % l == a) return 1;
  }
  return -1;
}

// Coefficient n of f|T_{l^2}, weight w2/2, as the three sums
// a(l^2 n) + l^{k-3/2} ((-1)^{k-1/2} n / l) a(n) + l^{2k-2} a(n / l^2).
inline mpq_class hecke_tl2_half(const std::vector<mpq_class>& a, long n, long l, long w2) {
  const long l2 = l * l;
  mpq_class out = a[static_cast<std::size_t>(l2 * n)];
  const long eps = ((w2 - 1) / 2) % 2 == 0 ? 1 : -1;
  mpz_class lp;
  mpz_ui_pow_ui(lp.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>((w2 - 3) / 2));
  out += legendre(eps * n, l) * lp * a[static_cast<std::size_t>(n)];
  if (n % l2 == 0) {
    mpz_ui_pow_ui(lp.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(w2 - 2));
    out += lp * a[static_cast<std::size_t>(n / l2)];
  }
  return out;
}

}  // namespace oracle
