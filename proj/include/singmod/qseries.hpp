#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "singmod/rational.hpp"

namespace singmod::qseries {

// Reading a coefficient past the truncation. Never treated as zero.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Congruences modulo p^m over Q, where the weight exponent beta(m) = m - 1.
class ModulusContext {
 public:
  ModulusContext(long p, long m);

  long p() const { return p_; }
  long m() const { return m_; }
  long beta() const { return m_ - 1; }
  const BigInt& modulus() const { return modulus_; }

  // Residue of a p-integral rational in [0, p^m); throws std::domain_error
  // when v_p(q) < 0.
  BigInt reduce(const BigRational& q) const;

  friend bool operator==(const ModulusContext& a, const ModulusContext& b) {
    return a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  long p_;
  long m_;
  BigInt modulus_;
};

// Truncated q-expansion a(0) + a(1) q + ... + a(L) q^L of a degree-1 form.
// Coefficients are exact rationals; once reduced modulo p^m they are integer
// residues in [0, p^m) and operators keep them reduced.
class QExpansion {
 public:
  QExpansion(std::vector<BigRational> coefficients, long weight_times_two, long level = 1);

  long truncation() const { return static_cast<long>(coefficients_.size()) - 1; }
  long weight_times_two() const { return weight_times_two_; }
  long level() const { return level_; }
  bool half_integral_weight() const { return weight_times_two_ % 2 != 0; }
  const std::optional<ModulusContext>& modulus() const { return modulus_; }

  // Throws TruncationError for n outside [0, L].
  const BigRational& operator[](long n) const;
  const std::vector<BigRational>& coefficients() const { return coefficients_; }

  QExpansion reduce(const ModulusContext& ctx) const;
  QExpansion truncate(long new_truncation) const;

  friend QExpansion operator+(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator*(const BigRational& c, const QExpansion& f);
  friend bool operator==(const QExpansion& a, const QExpansion& b);

 private:
  std::vector<BigRational> coefficients_;
  long weight_times_two_;
  long level_;
  std::optional<ModulusContext> modulus_;
};

/// E_k = 1 - (2k / B_k) * sum sigma_{k-1}(n) q^n up to q^L, k >= 4 even.
QExpansion eisenstein_qexp(long k, long truncation);

/// Delta = q * prod (1 - q^n)^24 up to q^L.
QExpansion delta_qexp(long truncation);

using CoefficientAccessor = std::function<BigRational(long)>;

/// Coefficient n of f|T_l for integral weight k and trivial character:
/// a(l n) + l^{k-1} a(n / l), the second term only when l | n.
BigRational hecke_tl_coefficient(const CoefficientAccessor& a, long n, long l, long k);

/// Coefficient n of f|T_{l^2} for half-integral weight k = w/2:
/// a(l^2 n) + l^{k-3/2} ((-1)^{k-1/2} n / l) a(n) + l^{2k-2} a(n / l^2).
BigRational hecke_tl2_half_coefficient(const CoefficientAccessor& a, long n, long l,
                                       long weight_times_two);

/// f|T_l for integral weight, l prime with l = 1 mod N. The output has
/// truncation floor(L / l).
QExpansion hecke_tl(const QExpansion& f, long l);

/// f|T_{l^2} for half-integral weight, l an odd prime with l = 1 mod N. The
/// output has truncation floor(L / l^2).
QExpansion hecke_tl2_half(const QExpansion& f, long l);

/// floor(k/12 * index) with k = w/2 for integral weight and k = (w+1)/2 (the
/// weight of f * theta) for half-integral weight.
long sturm_bound(long weight_times_two, long index);

}  // namespace singmod::qseries
