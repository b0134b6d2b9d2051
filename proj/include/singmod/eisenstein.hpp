#pragma once

#include <optional>
#include <vector>

#include "singmod/rational.hpp"
#include "singmod/valuation_profile.hpp"

namespace singmod::eisenstein {

// Content constant c_{k,r} of the rank-r Fourier coefficients of the
// degree-r Siegel-Eisenstein series of weight k.
struct CkrValue {
  long k = 0;
  long r = 0;
  BigRational value;
};

/// D*_{2k-r} for r = 0 mod 4, D**_{2k-r} for r = 2 mod 4. The exponent of
/// each prime q | D_{2k-r} is 1 + v_q(r/2); D** keeps only q = 3 mod 4.
BigInt denominator_correction(long k, long r);

/// Whether c_{k,r} is defined: every Bernoulli index that occurs is >= 2,
/// i.e. r <= 2k - 1 for odd r and r <= 2k - 2 for even r.
bool rank_admissible(long k, long r);

/// c_{k,r}; c_{k,0} = 1 by convention. Throws std::invalid_argument when k is
/// not even and positive or when a Bernoulli index 2k - 2i would drop below 2.
CkrValue c_kr(long k, long r);

/// v_p(c_{k,r}) for r = 0..r_max. Odd ranks and rank 0 are exact; even
/// ranks >= 2 are lower bounds on v_p^{(r)}(E_k).
ValuationProfile valuation_profile(long k, long p, long r_max);

struct WeightRange {
  long lo = 0;
  long hi = 0;
};
struct PrimeRange {
  long lo = 3;
  long hi = 0;
};

struct SearchHit {
  long k = 0;
  long p = 0;
  friend bool operator==(const SearchHit&, const SearchHit&) = default;
  friend auto operator<=>(const SearchHit&, const SearchHit&) = default;
};

struct SearchResult {
  // (k, p) with every hypothesis met plus p not dividing k - (n-1)/2.
  std::vector<SearchHit> hits;
  // Points meeting the stated hypotheses but with p | k - (n-1)/2; excluded
  // from hits because the rank-n valuation then exceeds 1.
  std::vector<SearchHit> excluded_by_extra_condition;
};

/// True if weight k is allowed for degree n: k > n + 1, or with
/// allow_small_weight also 4 | k and 2k >= n, or k = 2 mod 4 and 2k > n + 3.
bool weight_admissible(long n, long k, bool allow_small_weight);

/// Grid search for mod p singular Siegel-Eisenstein series of odd degree
/// n >= 3 and p-rank n - 1. Results are in (k, p) order.
SearchResult search_singular_eisenstein(long n, WeightRange k_range, PrimeRange p_range,
                                        bool allow_small_weight);

struct LedgerTerm {
  long i = 0;            // factor (k - i) / B_{2k-2i}
  long bernoulli_index;  // 2k - 2i
  ExtendedValuation v_numerator_factor;  // v_p(k - i)
  ExtendedValuation v_bernoulli_numerator;
  ExtendedValuation v_bernoulli_denominator;
  ExtendedValuation contribution;        // v_p((k - i) / B_{2k-2i})
};

struct KlingenCheck {
  long k = 0, p = 0, n = 0, r = 0;
  // First j in [r, n-1] with (p - 1) | (2k - j), if any.
  std::optional<long> violated_index;
  ExtendedValuation v_top;   // v_p(c_{k,n})
  ExtendedValuation v_rank;  // v_p(c_{k,r})
  std::vector<LedgerTerm> ledger;
  bool holds = false;        // v_top <= v_rank
  bool ledger_consistent = false;  // v_top == v_rank + sum of contributions
};

/// Compares v_p(c_{k,n}) with v_p(c_{k,r}) for odd n and r < n, with the
/// term-by-term ledger of the factors between ranks r and n.
KlingenCheck klingen_valuation_inequality(long k, long p, long n, long r);

}  // namespace singmod::eisenstein
