#include "singmod/constant_verifier.hpp"

#include <algorithm>
#include <vector>

#include "singmod/arith.hpp"

namespace singmod::qseries {

EisensteinOracle::EisensteinOracle(long k)
    : k_(k), scale_(-BigRational(2 * k) / bernoulli(k)) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("EisensteinOracle: need even k >= 4");
}

std::optional<BigRational> EisensteinOracle::coefficient(long n) const {
  if (n < 0) return std::nullopt;
  if (n == 0) return BigRational(1);
  return scale_ * BigRational(divisor_sigma(n, static_cast<unsigned long>(k_ - 1)));
}

std::optional<BigRational> SeriesOracle::coefficient(long n) const {
  if (n < 0 || n > f_.truncation()) return std::nullopt;
  return f_[n];
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::constant: return "CONSTANT";
    case VerdictKind::premise_violated: return "PREMISE_VIOLATED";
    case VerdictKind::contradiction_witness: return "CONTRADICTION_WITNESS";
  }
  return "CONSTANT";
}

Verdict finite_support_implies_constant(const CoefficientOracle& oracle, const VerifierInput& in) {
  const ModulusContext& ctx = in.ctx;
  const long d = in.claimed_bound;
  if (d < 0) throw std::invalid_argument("verifier: claimed bound must be >= 0");
  if (in.level < 1) throw std::invalid_argument("verifier: level must be positive");
  const bool half = in.weight_times_two % 2 != 0;

  Verdict v;
  v.sturm = sturm_bound(in.weight_times_two, in.group_index);

  // l2 < l1, the two smallest primes > d with l = 1 mod pN.
  const long step = ctx.p() * in.level;
  std::vector<long> chosen;
  for (long l = step + 1; chosen.size() < 2; l += step) {
    if (l > d && is_prime(l)) chosen.push_back(l);
  }
  v.l2 = chosen[0];
  v.l1 = chosen[1];
  v.demand_bound = std::max({d, v.sturm, 1L}) * v.l1 * v.l1;

  // Residues a(0..demand) mod p^m.
  std::vector<BigInt> residues(static_cast<std::size_t>(v.demand_bound + 1));
  for (long n = 0; n <= v.demand_bound; ++n) {
    const auto c = oracle.coefficient(n);
    if (!c) throw OracleRefusal("oracle refused coefficient " + std::to_string(n));
    residues[static_cast<std::size_t>(n)] = ctx.reduce(*c);
  }

  for (long n = d + 1; n <= v.demand_bound; ++n) {
    if (residues[static_cast<std::size_t>(n)] != 0) {
      v.kind = VerdictKind::premise_violated;
      v.index = n;
      return v;
    }
  }

  long top = 0;
  for (long n = d; n >= 1; --n) {
    if (residues[static_cast<std::size_t>(n)] != 0) {
      top = n;
      break;
    }
  }
  v.support_degree = top;
  if (top == 0) {
    v.kind = VerdictKind::constant;
    v.constant = residues[0];
    return v;
  }

  // Finite-support model of f: a(n) = 0 for n > d, as sampled above.
  const CoefficientAccessor model = [&](long n) -> BigRational {
    if (n > d) return BigRational(0);
    return BigRational(residues[static_cast<std::size_t>(n)]);
  };
  const long index = half ? v.l2 * v.l2 * top : v.l2 * top;
  BigRational diff;
  if (half) {
    diff = hecke_tl2_half_coefficient(model, index, v.l2, in.weight_times_two) -
           hecke_tl2_half_coefficient(model, index, v.l1, in.weight_times_two);
  } else {
    const long k = in.weight_times_two / 2;
    diff = hecke_tl_coefficient(model, index, v.l2, k) - hecke_tl_coefficient(model, index, v.l1, k);
  }
  v.kind = VerdictKind::contradiction_witness;
  v.index = index;
  v.witness_value = ctx.reduce(diff);
  return v;
}

}  // namespace singmod::qseries
