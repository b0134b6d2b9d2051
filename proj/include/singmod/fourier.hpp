#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "singmod/lambda.hpp"
#include "singmod/valuation_profile.hpp"

namespace singmod::fourier {

using lambda::HalfIntegralMatrix;

// Which indices a table claims to contain: every class of rank <= rank_bound
// whose core has det(2T) <= det_doubled_max.
struct TableBounds {
  int rank_bound = 0;
  std::int64_t det_doubled_max = 0;
  friend bool operator==(const TableBounds&, const TableBounds&) = default;
};

// Fourier coefficients a(T) of a degree-n form on canonical representatives.
// A rank-r key is 0_{n-r} (+) core with core reduced.
struct FourierTable {
  int degree = 0;
  long weight_times_two = 0;
  std::map<HalfIntegralMatrix, BigInt> entries;
  TableBounds bounds;

  friend bool operator==(const FourierTable&, const FourierTable&) = default;
};

// Keys a table of this degree and bounds must contain, ordered by rank and
// then as enumerate_classes orders them.
std::vector<HalfIntegralMatrix> expected_keys(int degree, TableBounds bounds);

// Restriction to indices 0 (+) T'. Throws CodedError MISSING_EMBEDDINGS if a
// key the result needs is absent.
FourierTable phi(const FourierTable& table);

// Minimum of v_p over scanned entries, per rank 0..rank_bound. Rank 0 is
// exact; higher ranks are flagged upper_bound since the scan is finite.
ValuationProfile valuation_by_rank(const FourierTable& table, long p);

struct PRank {
  // Largest rank with an entry not divisible by p; nullopt when none is.
  std::optional<int> r_lower;
  std::optional<HalfIntegralMatrix> witness;
  // The weight congruence (p-1) | (2k - r) leaves r_lower as the only
  // possible p-rank in [r_lower, degree].
  bool certified = false;
};

PRank p_rank(const FourierTable& table, long p);

struct CongruenceCheck {
  bool holds = false;            // (p-1) | (2k - r)
  bool parity_consistent = false;  // r even iff the weight is integral
};

CongruenceCheck prank_congruence_check(long weight_times_two, long r, long p);

struct JumpCheck {
  // Ranks n' where v^{(n'+1)} = v^{(n')} + m, m >= 1, but
  // (p-1) p^{m-1} does not divide 2k - n'.
  std::vector<long> violations;
  // Set when the profile has inexact entries; violations are then warnings.
  bool advisory = false;
};

JumpCheck jump_congruence_violations(const ValuationProfile& profile, long weight_times_two,
                                     long p);

}  // namespace singmod::fourier
