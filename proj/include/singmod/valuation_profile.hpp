#pragma once

#include <string_view>
#include <vector>

#include "singmod/rational.hpp"

namespace singmod {

// How a profile entry relates to the true rank-r valuation v_p^{(r)}(f).
enum class Bound {
  exact,
  lower_bound,  // true value >= entry (e.g. content constants at even rank)
  upper_bound,  // true value <= entry (minimum over a finite scan)
};

std::string_view to_string(Bound b);
Bound bound_from_string(std::string_view s);

struct ProfileEntry {
  long rank = 0;
  ExtendedValuation value;
  Bound bound = Bound::exact;

  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

// Rank-stratified p-adic valuations of a form, ranks 0..r_max consecutively.
struct ValuationProfile {
  long weight_times_two = 0;
  long p = 0;
  std::vector<ProfileEntry> entries;

  bool all_exact() const;
  friend bool operator==(const ValuationProfile&, const ValuationProfile&) = default;
};

}  // namespace singmod
