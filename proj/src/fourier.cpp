#include "singmod/fourier.hpp"

#include <algorithm>
#include <stdexcept>

#include "singmod/arith.hpp"
#include "singmod/error.hpp"

namespace singmod::fourier {
namespace {

int rank_of(const HalfIntegralMatrix& t) { return t.doubled().rank(); }

bool divides(const BigInt& d, long value) {
  if (value == 0) return true;
  return mpz_divisible_p(BigInt(value).get_mpz_t(), d.get_mpz_t()) != 0;
}

void require_odd_prime(long p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
}

}  // namespace

std::vector<HalfIntegralMatrix> expected_keys(int degree, TableBounds bounds) {
  std::vector<HalfIntegralMatrix> keys{HalfIntegralMatrix::zero(degree)};
  const int top = std::min(bounds.rank_bound, degree);
  for (int r = 1; r <= top; ++r) {
    for (const auto& core : lambda::enumerate_classes(r, bounds.det_doubled_max)) {
      keys.push_back(lambda::embed(core, degree));
    }
  }
  return keys;
}

FourierTable phi(const FourierTable& table) {
  const int n = table.degree;
  if (n < 1) throw std::invalid_argument("phi needs degree >= 1");
  FourierTable out;
  out.degree = n - 1;
  out.weight_times_two = table.weight_times_two;
  out.bounds = {std::min(table.bounds.rank_bound, n - 1), table.bounds.det_doubled_max};
  for (const auto& key : expected_keys(out.degree, out.bounds)) {
    const auto lifted = lambda::embed(*lambda::core_of(key, rank_of(key)), n);
    const auto it = table.entries.find(lifted);
    if (it == table.entries.end()) {
      throw CodedError("MISSING_EMBEDDINGS", "no entry for index\n" + lifted.to_text());
    }
    out.entries.emplace(key, it->second);
  }
  return out;
}

ValuationProfile valuation_by_rank(const FourierTable& table, long p) {
  require_odd_prime(p);
  ValuationProfile profile;
  profile.weight_times_two = table.weight_times_two;
  profile.p = p;
  const int top = std::min(table.bounds.rank_bound, table.degree);
  for (int r = 0; r <= top; ++r) {
    profile.entries.push_back({r, ExtendedValuation::infinity(), r == 0 ? Bound::exact : Bound::upper_bound});
  }
  for (const auto& [key, value] : table.entries) {
    const int r = rank_of(key);
    if (r > top) continue;
    auto& e = profile.entries[static_cast<std::size_t>(r)];
    e.value = std::min(e.value, valuation(value, p));
  }
  return profile;
}

PRank p_rank(const FourierTable& table, long p) {
  require_odd_prime(p);
  PRank out;
  for (const auto& [key, value] : table.entries) {
    if (mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    const int r = rank_of(key);
    if (!out.r_lower || r > *out.r_lower) {
      out.r_lower = r;
      out.witness = key;
    }
  }
  if (!out.r_lower) {
    out.certified = true;
    return out;
  }
  const auto congruent = [&](long r) { return floor_mod(table.weight_times_two - r, p - 1) == 0; };
  bool certified = *out.r_lower == table.degree || congruent(*out.r_lower);
  for (long r = *out.r_lower + 1; r <= table.degree && certified; ++r) certified = !congruent(r);
  out.certified = certified;
  return out;
}

CongruenceCheck prank_congruence_check(long weight_times_two, long r, long p) {
  require_odd_prime(p);
  if (r < 0) throw std::invalid_argument("rank must be nonnegative");
  return {floor_mod(weight_times_two - r, p - 1) == 0, (r % 2 == 0) == (weight_times_two % 2 == 0)};
}

JumpCheck jump_congruence_violations(const ValuationProfile& profile, long weight_times_two,
                                     long p) {
  require_odd_prime(p);
  JumpCheck out;
  out.advisory = !profile.all_exact();
  const auto& e = profile.entries;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const ExtendedValuation lo = e[i].value;
    const ExtendedValuation hi = e[i + 1].value;
    if (lo.is_infinite() || !(hi > lo)) continue;
    const long n_prime = e[i].rank;
    const long gap = weight_times_two - n_prime;
    bool ok;
    if (hi.is_infinite()) {
      ok = gap == 0;
    } else {
      const long m = hi.value() - lo.value();
      ok = divides(BigInt(p - 1) * power(BigInt(p), static_cast<unsigned long>(m - 1)), gap);
    }
    if (!ok) out.violations.push_back(n_prime);
  }
  return out;
}

}  // namespace singmod::fourier
