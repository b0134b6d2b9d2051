#pragma once

#include <compare>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "singmod/int_matrix.hpp"

namespace singmod::lambda {

// Half-integral symmetric matrix T, stored as the integer matrix 2T: symmetric
// with even diagonal.
class HalfIntegralMatrix {
 public:
  HalfIntegralMatrix() = default;
  // Throws std::invalid_argument unless doubled is symmetric with even diagonal.
  explicit HalfIntegralMatrix(IntMatrix doubled);

  static HalfIntegralMatrix zero(int n);

  int degree() const { return doubled_.rows(); }
  const IntMatrix& doubled() const { return doubled_; }

  // T[U] = U^T T U
  HalfIntegralMatrix transform(const IntMatrix& u) const;

  // Text format: first line n, then n rows of 2T.
  std::string to_text() const;
  static HalfIntegralMatrix from_text(const std::string& text);
  static HalfIntegralMatrix read(std::istream& in);

  friend bool operator==(const HalfIntegralMatrix&, const HalfIntegralMatrix&) = default;
  friend std::strong_ordering operator<=>(const HalfIntegralMatrix&,
                                          const HalfIntegralMatrix&) = default;

 private:
  IntMatrix doubled_;
};

enum class Positivity { positive_definite, positive_semidefinite, indefinite };
std::string to_string(Positivity p);

struct Inspection {
  int rank = 0;
  BigInt det_doubled;  // det(2T)
  Positivity positivity = Positivity::indefinite;
  friend bool operator==(const Inspection&, const Inspection&) = default;
};

Inspection inspect(const HalfIntegralMatrix& t);

struct Reduction {
  HalfIntegralMatrix reduced;
  IntMatrix transform;  // U in GL_n(Z) with T[U] = reduced
};

// Canonical reduced representative of a positive definite T of degree <= 3.
//
// The representative is the Gram matrix of the basis (v_1, ..., v_n) that
// minimizes, lexicographically, the key
//   (2T[v_1], ..., 2T[v_n], -off-diagonals of the upper triangle row by row)
// over all bases of Z^n. The diagonal part is attained by a Minkowski
// reduced basis (successive minima, n <= 3), so the search runs over
// vectors no longer than the diagonal of a pre-reduced basis. For n = 2
// this yields 0 <= b <= a <= c in form notation.
Reduction reduce(const HalfIntegralMatrix& t);

struct Equivalence {
  bool equivalent = false;
  std::optional<IntMatrix> witness;  // U with T1[U] = T2
};

Equivalence are_equivalent(const HalfIntegralMatrix& t1, const HalfIntegralMatrix& t2);

// One canonical representative per GL_n(Z)-class of positive definite T with
// det(2T) <= det_doubled_max, ordered by (det(2T), representative).
std::vector<HalfIntegralMatrix> enumerate_classes(int n, std::int64_t det_doubled_max);

// 0_{n-r} (+) core: the canonical embedding of a rank-r class into degree n.
HalfIntegralMatrix embed(const HalfIntegralMatrix& core, int n);

// Inverse of embed for matrices of that shape; nullopt if the leading
// (n - r) rows are not zero.
std::optional<HalfIntegralMatrix> core_of(const HalfIntegralMatrix& t, int rank);

}  // namespace singmod::lambda
