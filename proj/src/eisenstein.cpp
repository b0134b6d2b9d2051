#include "singmod/eisenstein.hpp"

#include <stdexcept>
#include <string>

#include "singmod/arith.hpp"
#include "singmod/parallel.hpp"

namespace singmod::eisenstein {
namespace {

void require_weight(long k) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("weight k must be even and >= 2, got " + std::to_string(k));
  }
}

void require_odd_prime(long p) {
  if (p < 3 || !is_prime(p)) {
    throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
  }
}

// (k - i) / B_{2k-2i}
BigRational factor(long k, long i) { return BigRational(k - i) / bernoulli(2 * k - 2 * i); }

}  // namespace

bool rank_admissible(long k, long r) {
  if (r < 0) return false;
  return r % 2 == 1 ? r <= 2 * k - 1 : r <= 2 * k - 2;
}

BigInt denominator_correction(long k, long r) {
  require_weight(k);
  if (r < 2 || r % 2 != 0) {
    throw std::invalid_argument("denominator_correction: r must be even and >= 2, got " +
                                std::to_string(r));
  }
  const long m = 2 * k - r;
  if (m < 2) {
    throw std::invalid_argument("denominator_correction: 2k - r must be >= 2");
  }
  const bool only_3_mod_4 = r % 4 == 2;
  const BigInt d_m = von_staudt_clausen_denominator(m);
  BigInt out(1);
  for (long q : primes_in(2, m + 1)) {
    if (d_m % q != 0) continue;
    if (only_3_mod_4 && q % 4 != 3) continue;
    // k - m/2 = r/2
    const long exponent = 1 + valuation(BigInt(r / 2), q).value();
    out *= power(BigInt(q), static_cast<unsigned long>(exponent));
  }
  return out;
}

CkrValue c_kr(long k, long r) {
  require_weight(k);
  if (!rank_admissible(k, r)) {
    throw std::invalid_argument("c_kr: rank " + std::to_string(r) + " out of range for k = " +
                                std::to_string(k) + " (a Bernoulli index would drop below 2)");
  }
  if (r == 0) return {k, 0, BigRational(1)};

  BigRational value = BigRational(k) / bernoulli(k);
  if (r % 2 == 1) {
    value *= power(BigRational(2), r);
    for (long i = 1; i <= (r - 1) / 2; ++i) value *= factor(k, i);
  } else {
    value *= power(BigRational(2), r % 4 == 0 ? r : r - 1);
    value /= BigRational(denominator_correction(k, r));
    for (long i = 1; i <= r / 2; ++i) value *= factor(k, i);
  }
  return {k, r, value};
}

ValuationProfile valuation_profile(long k, long p, long r_max) {
  require_odd_prime(p);
  require_weight(k);
  if (r_max < 0 || !rank_admissible(k, r_max)) {
    throw std::invalid_argument("valuation_profile: r_max " + std::to_string(r_max) +
                                " out of range for k = " + std::to_string(k));
  }
  ValuationProfile profile;
  profile.weight_times_two = 2 * k;
  profile.p = p;
  for (long r = 0; r <= r_max; ++r) {
    const Bound bound = (r == 0 || r % 2 == 1) ? Bound::exact : Bound::lower_bound;
    profile.entries.push_back({r, valuation(c_kr(k, r).value, p), bound});
  }
  return profile;
}

bool weight_admissible(long n, long k, bool allow_small_weight) {
  if (k <= 0 || k % 2 != 0) return false;
  if (k > n + 1) return true;
  if (!allow_small_weight) return false;
  if (k % 4 == 0) return 2 * k >= n;
  return 2 * k > n + 3;
}

SearchResult search_singular_eisenstein(long n, WeightRange k_range, PrimeRange p_range,
                                        bool allow_small_weight) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("search: degree n must be odd and >= 3, got " + std::to_string(n));
  }
  std::vector<long> weights;
  for (long k = std::max(k_range.lo, 2L); k <= k_range.hi; ++k) {
    if (weight_admissible(n, k, allow_small_weight)) weights.push_back(k);
  }
  const std::vector<long> primes = primes_in(std::max(p_range.lo, 3L), p_range.hi);

  struct PerWeight {
    std::vector<SearchHit> hits;
    std::vector<SearchHit> excluded;
  };
  std::vector<PerWeight> per_weight(weights.size());
  parallel_for(weights.size(), [&](std::size_t idx) {
    const long k = weights[idx];
    for (long p : primes) {
      if ((2 * k - n + 1) % (p - 1) != 0) continue;
      if (valuation(BigRational(k) / bernoulli(k), p) != ExtendedValuation(0)) continue;
      bool units = true;
      for (long i = 1; i <= (n - 3) / 2 && units; ++i) {
        units = valuation(factor(k, i), p) == ExtendedValuation(0);
      }
      if (!units) continue;
      if (valuation(BigInt(k - (n - 1) / 2), p) == ExtendedValuation(0)) {
        per_weight[idx].hits.push_back({k, p});
      } else {
        per_weight[idx].excluded.push_back({k, p});
      }
    }
  });

  SearchResult result;
  for (auto& w : per_weight) {
    result.hits.insert(result.hits.end(), w.hits.begin(), w.hits.end());
    result.excluded_by_extra_condition.insert(result.excluded_by_extra_condition.end(),
                                              w.excluded.begin(), w.excluded.end());
  }
  return result;
}

KlingenCheck klingen_valuation_inequality(long k, long p, long n, long r) {
  require_odd_prime(p);
  require_weight(k);
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("klingen check: n must be odd and positive");
  }
  if (r < 0 || r >= n) throw std::invalid_argument("klingen check: need 0 <= r < n");

  KlingenCheck out{k, p, n, r, std::nullopt, {}, {}, {}, false, false};
  for (long j = r; j <= n - 1; ++j) {
    if ((2 * k - j) % (p - 1) == 0) {
      out.violated_index = j;
      break;
    }
  }
  out.v_top = valuation(c_kr(k, n).value, p);
  out.v_rank = valuation(c_kr(k, r).value, p);

  auto term = [&](long i, long bernoulli_index) {
    const BigRational b = bernoulli(bernoulli_index);
    LedgerTerm t;
    t.i = i;
    t.bernoulli_index = bernoulli_index;
    t.v_numerator_factor = valuation(BigInt(k - i), p);
    t.v_bernoulli_numerator = valuation(b.numerator(), p);
    t.v_bernoulli_denominator = valuation(b.denominator(), p);
    t.contribution = valuation(BigRational(k - i) / b, p);
    return t;
  };
  // Rank 0 carries the constant 1, so the leading k/B_k factor is in the gap.
  if (r == 0) out.ledger.push_back(term(0, k));
  for (long i = r / 2 + 1; i <= (n - 1) / 2; ++i) out.ledger.push_back(term(i, 2 * k - 2 * i));

  ExtendedValuation sum(0);
  for (const auto& t : out.ledger) sum = sum + t.contribution;
  out.ledger_consistent = out.v_top == out.v_rank + sum;
  out.holds = out.v_top <= out.v_rank;
  return out;
}

}  // namespace singmod::eisenstein
