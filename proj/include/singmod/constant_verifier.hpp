#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "singmod/qseries.hpp"

namespace singmod::qseries {

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Source of exact coefficients n -> a(n) of a degree-1 form.
class CoefficientOracle {
 public:
  virtual ~CoefficientOracle() = default;
  // std::nullopt means the oracle cannot supply a(n).
  virtual std::optional<BigRational> coefficient(long n) const = 0;
  // Whether coefficient() may be called from several threads at once.
  virtual bool concurrent_reads() const { return true; }
};

// E_k computed on demand.
class EisensteinOracle final : public CoefficientOracle {
 public:
  explicit EisensteinOracle(long k);
  std::optional<BigRational> coefficient(long n) const override;

 private:
  long k_;
  BigRational scale_;
};

// Backed by a stored series; refuses indices beyond its truncation.
class SeriesOracle final : public CoefficientOracle {
 public:
  explicit SeriesOracle(QExpansion f) : f_(std::move(f)) {}
  std::optional<BigRational> coefficient(long n) const override;

 private:
  QExpansion f_;
};

struct VerifierInput {
  long weight_times_two = 0;
  long level = 1;
  long group_index = 1;  // [SL_2(Z) : Gamma], supplied by the caller
  ModulusContext ctx;
  long claimed_bound = 0;  // d: a(n) = 0 mod p^m claimed for all n > d
};

enum class VerdictKind { constant, premise_violated, contradiction_witness };

struct Verdict {
  VerdictKind kind = VerdictKind::constant;
  BigInt constant;          // constant: a(0) mod p^m
  long index = 0;           // premise_violated: first n > d with a(n) != 0;
                            // contradiction_witness: l2^2 d* (or l2 d* for T_l)
  long l1 = 0, l2 = 0;      // chosen primes, l1 > l2 > d
  long support_degree = 0;  // d*: largest n <= d with a(n) != 0 mod p^m
  BigInt witness_value;     // difference of the two Hecke images at index
  long sturm = 0;
  long demand_bound = 0;    // coefficients sampled up to this index
};

std::string to_string(VerdictKind k);

/// Decides whether a form whose coefficients vanish mod p^m beyond d is a
/// constant mod p^m. Two primes l2 < l1, the smallest primes > d with
/// l = 1 mod pN, are used with T_l (integral weight) or T_{l^2}
/// (half-integral weight). Coefficients are sampled up to
/// max(d, s_0, 1) * l1^2. Throws OracleRefusal if the oracle cannot supply a
/// required coefficient.
Verdict finite_support_implies_constant(const CoefficientOracle& oracle, const VerifierInput& in);

}  // namespace singmod::qseries
