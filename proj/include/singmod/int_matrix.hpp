#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "singmod/rational.hpp"

namespace singmod {

// Small dense integer matrix, row-major. Sized for Gram matrices and
// unimodular transforms of lattices of rank <= ~16.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(int n);
  static IntMatrix square(int n, std::span<const std::int64_t> row_major);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::int64_t& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
  std::span<const std::int64_t> data() const { return data_; }

  IntMatrix transpose() const;
  bool is_symmetric() const;

  // A[U] = U^T A U
  IntMatrix congruence(const IntMatrix& u) const;

  // Principal submatrix on the given row/column indices.
  IntMatrix principal(std::span<const int> indices) const;

  BigInt determinant() const;
  int rank() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend std::strong_ordering operator<=>(const IntMatrix&, const IntMatrix&) = default;
  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

// Inverse of a matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& u);

}  // namespace singmod
