#include "singmod/int_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace singmod {
namespace {

std::vector<std::vector<BigInt>> to_big(const IntMatrix& m) {
  std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(m.rows()),
                                     std::vector<BigInt>(static_cast<std::size_t>(m.cols())));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) a[i][j] = static_cast<long>(m(i, j));
  }
  return a;
}

// Fraction-free (Bareiss) elimination; returns rank and, for square input,
// the determinant.
std::pair<int, BigInt> bareiss(const IntMatrix& m) {
  auto a = to_big(m);
  const int rows = m.rows();
  const int cols = m.cols();
  BigInt prev(1);
  int sign = 1;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i) {
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      std::swap(a[pivot], a[rank]);
      sign = -sign;
    }
    for (int i = rank + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  BigInt det(0);
  if (rows == cols && rank == rows) det = sign > 0 ? prev : BigInt(-prev);
  return {rank, det};
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(rows.size() ? int(rows.begin()->size()) : 0) {
  data_.reserve(std::size_t(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::square(int n, std::span<const std::int64_t> row_major) {
  if (row_major.size() != std::size_t(n) * n) throw std::invalid_argument("square: wrong size");
  IntMatrix m(n, n);
  std::copy(row_major.begin(), row_major.end(), m.data_.begin());
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

IntMatrix IntMatrix::congruence(const IntMatrix& u) const { return u.transpose() * (*this) * u; }

IntMatrix IntMatrix::principal(std::span<const int> indices) const {
  const int k = static_cast<int>(indices.size());
  IntMatrix out(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) out(i, j) = (*this)(indices[i], indices[j]);
  }
  return out;
}

BigInt IntMatrix::determinant() const {
  if (!is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  return bareiss(*this).second;
}

int IntMatrix::rank() const { return bareiss(*this).first; }

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  const BigInt det = u.determinant();
  if (det != 1 && det != -1) throw std::invalid_argument("matrix is not unimodular");
  const int n = u.rows();
  IntMatrix inv(n, n);
  if (n == 1) {
    inv(0, 0) = u(0, 0);
    return inv;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // cofactor C_ij; inverse_ji = C_ij / det
      IntMatrix minor(n - 1, n - 1);
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = u(r, c);
        }
        ++mr;
      }
      BigInt cof = minor.determinant();
      if ((i + j) % 2 != 0) cof = -cof;
      inv(j, i) = BigInt(cof * det).get_si();
    }
  }
  return inv;
}

}  // namespace singmod
