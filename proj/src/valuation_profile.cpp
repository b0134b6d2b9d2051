#include "singmod/valuation_profile.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace singmod {

std::string_view to_string(Bound b) {
  switch (b) {
    case Bound::exact: return "exact";
    case Bound::lower_bound: return "lower_bound";
    case Bound::upper_bound: return "upper_bound";
  }
  return "exact";
}

Bound bound_from_string(std::string_view s) {
  if (s == "exact") return Bound::exact;
  if (s == "lower_bound") return Bound::lower_bound;
  if (s == "upper_bound") return Bound::upper_bound;
  throw std::invalid_argument("unknown bound flag '" + std::string(s) + "'");
}

bool ValuationProfile::all_exact() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ProfileEntry& e) { return e.bound == Bound::exact; });
}

}  // namespace singmod
