#include "singmod/detail/fincke_pohst.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace singmod::detail {

std::int64_t quadratic_form(const IntMatrix& gram, std::span<const std::int64_t> x) {
  const int n = gram.rows();
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < n; ++j) row += gram(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

void enumerate_short_vectors(const IntMatrix& gram, std::int64_t bound,
                             const ShortVectorVisitor& visit) {
  const int n = gram.rows();
  if (!gram.is_symmetric()) throw std::invalid_argument("short vectors: Gram must be symmetric");
  if (bound < 0) return;
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    visit(x, 0);
    return;
  }

  // q(i,i) and q(i,j) (j > i) with A[x] = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  using real = long double;
  std::vector<std::vector<real>> q(n, std::vector<real>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q[i][j] = static_cast<real>(gram(i, j));
  }
  for (int i = 0; i < n; ++i) {
    if (!(q[i][i] > 0)) throw std::invalid_argument("short vectors: Gram is not positive definite");
    for (int j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int k = i + 1; k < n; ++k) {
      for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
  }

  const real slack = 1e-9L * static_cast<real>(bound) + 1e-6L;
  std::vector<real> remaining(static_cast<std::size_t>(n));
  std::vector<real> center(static_cast<std::size_t>(n));
  std::vector<std::int64_t> upper(static_cast<std::size_t>(n));

  auto set_range = [&](int i) {
    real c = 0;
    for (int j = i + 1; j < n; ++j) c -= q[i][j] * static_cast<real>(x[j]);
    center[i] = c;
    const real room = remaining[i] + slack;
    const real r = room < 0 ? 0 : std::sqrt(room / q[i][i]);
    x[i] = static_cast<std::int64_t>(std::ceil(c - r));
    upper[i] = static_cast<std::int64_t>(std::floor(c + r));
  };

  int i = n - 1;
  remaining[i] = static_cast<real>(bound);
  set_range(i);
  while (true) {
    if (x[i] > upper[i]) {
      if (++i == n) break;
      ++x[i];
      continue;
    }
    if (i == 0) {
      const std::int64_t norm = quadratic_form(gram, x);
      if (norm <= bound) visit(x, norm);
      ++x[0];
      continue;
    }
    const real t = static_cast<real>(x[i]) - center[i];
    remaining[i - 1] = remaining[i] - q[i][i] * t * t;
    --i;
    set_range(i);
  }
}

}  // namespace singmod::detail
