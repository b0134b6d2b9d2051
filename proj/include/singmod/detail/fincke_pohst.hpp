#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "singmod/int_matrix.hpp"

namespace singmod::detail {

using ShortVectorVisitor = std::function<void(std::span<const std::int64_t> x, std::int64_t norm)>;

// Visits every x in Z^n with x^T A x <= bound, for A symmetric positive
// definite. Search bounds come from a floating-point Cholesky form widened
// by a small margin; each candidate's norm is then checked exactly in
// integers, so the visited set is exact.
void enumerate_short_vectors(const IntMatrix& gram, std::int64_t bound,
                             const ShortVectorVisitor& visit);

// Exact x^T A x.
std::int64_t quadratic_form(const IntMatrix& gram, std::span<const std::int64_t> x);

}  // namespace singmod::detail
