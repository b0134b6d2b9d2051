#include "singmod/lambda.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "singmod/detail/fincke_pohst.hpp"

namespace singmod::lambda {

HalfIntegralMatrix::HalfIntegralMatrix(IntMatrix doubled) : doubled_(std::move(doubled)) {
  if (!doubled_.is_symmetric()) throw std::invalid_argument("2T must be symmetric");
  for (int i = 0; i < doubled_.rows(); ++i) {
    if (doubled_(i, i) % 2 != 0) throw std::invalid_argument("2T must have even diagonal");
  }
}

HalfIntegralMatrix HalfIntegralMatrix::zero(int n) { return HalfIntegralMatrix(IntMatrix(n, n)); }

HalfIntegralMatrix HalfIntegralMatrix::transform(const IntMatrix& u) const {
  return HalfIntegralMatrix(doubled_.congruence(u));
}

std::string HalfIntegralMatrix::to_text() const {
  std::ostringstream os;
  os << degree();
  for (int i = 0; i < degree(); ++i) {
    os << '\n';
    for (int j = 0; j < degree(); ++j) os << (j ? " " : "") << doubled_(i, j);
  }
  return os.str();
}

HalfIntegralMatrix HalfIntegralMatrix::read(std::istream& in) {
  int n = -1;
  if (!(in >> n) || n < 0) throw std::invalid_argument("matrix text: expected degree n >= 0");
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> m(i, j))) throw std::invalid_argument("matrix text: expected n*n integers");
    }
  }
  return HalfIntegralMatrix(std::move(m));
}

HalfIntegralMatrix HalfIntegralMatrix::from_text(const std::string& text) {
  std::istringstream in(text);
  auto t = read(in);
  std::string extra;
  if (in >> extra) throw std::invalid_argument("matrix text: trailing data '" + extra + "'");
  return t;
}

std::string to_string(Positivity p) {
  switch (p) {
    case Positivity::positive_definite: return "positive-definite";
    case Positivity::positive_semidefinite: return "positive-semidefinite";
    case Positivity::indefinite: return "indefinite";
  }
  return "indefinite";
}

Inspection inspect(const HalfIntegralMatrix& t) {
  const IntMatrix& a = t.doubled();
  const int n = a.rows();
  Inspection out;
  out.rank = a.rank();
  out.det_doubled = a.determinant();

  bool leading_positive = true;
  for (int k = 1; k <= n && leading_positive; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    leading_positive = a.principal(idx).determinant() > 0;
  }
  if (leading_positive) {
    out.positivity = Positivity::positive_definite;
    return out;
  }
  // Semidefinite iff every principal minor is >= 0.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    if (a.principal(idx).determinant() < 0) {
      out.positivity = Positivity::indefinite;
      return out;
    }
  }
  out.positivity = Positivity::positive_semidefinite;
  return out;
}

namespace {

void require_reducible(const HalfIntegralMatrix& t) {
  if (t.degree() > 3) throw std::invalid_argument("reduction supports degree <= 3 only");
  if (t.degree() > 0 && inspect(t).positivity != Positivity::positive_definite) {
    throw std::invalid_argument("reduction needs a positive definite matrix");
  }
}

// Greedy pairwise size reduction; keeps u with a.congruence(u) current.
void pre_reduce(const IntMatrix& a0, IntMatrix& u) {
  const int n = a0.rows();
  for (bool changed = true; changed;) {
    changed = false;
    IntMatrix a = a0.congruence(u);
    // Order columns by norm.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    IntMatrix perm(n, n);
    for (int j = 0; j < n; ++j) perm(order[j], j) = 1;
    u = u * perm;
    a = a0.congruence(u);
    for (int j = 1; j < n; ++j) {
      for (int i = 0; i < j; ++i) {
        if (2 * std::abs(a(i, j)) <= a(i, i)) continue;
        // nearest integer to a_ij / a_ii
        const std::int64_t aii = a(i, i);
        std::int64_t r = (2 * a(i, j) + aii) / (2 * aii);
        if (2 * a(i, j) + aii < 0 && (2 * a(i, j) + aii) % (2 * aii) != 0) --r;
        for (int row = 0; row < n; ++row) u(row, j) -= r * u(row, i);
        a = a0.congruence(u);
        changed = true;
      }
    }
  }
}

std::int64_t gcd_all(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

struct Candidate {
  std::vector<std::int64_t> x;  // coordinates in the pre-reduced basis
  std::int64_t norm;
};

// Whether columns cols[0..k) extend to a basis of Z^n (gcd of maximal minors is 1).
bool extendable(const std::vector<const Candidate*>& cols, int n) {
  const int k = static_cast<int>(cols.size());
  if (k == n) {
    IntMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) m(i, j) = cols[j]->x[i];
    }
    const BigInt d = m.determinant();
    return d == 1 || d == -1;
  }
  if (k == 1) return gcd_all(cols[0]->x) == 1;
  // k == 2, n == 3: gcd of the three 2x2 minors.
  const auto& a = cols[0]->x;
  const auto& b = cols[1]->x;
  const std::int64_t minors[3] = {a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0],
                                  a[1] * b[2] - a[2] * b[1]};
  return gcd_all(minors) == 1;
}

}  // namespace

Reduction reduce(const HalfIntegralMatrix& t) {
  require_reducible(t);
  const int n = t.degree();
  if (n == 0) return {t, IntMatrix::identity(0)};

  IntMatrix pre = IntMatrix::identity(n);
  pre_reduce(t.doubled(), pre);
  const IntMatrix a = t.doubled().congruence(pre);

  std::int64_t bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, a(i, i));
  std::vector<Candidate> cands;
  detail::enumerate_short_vectors(a, bound, [&](std::span<const std::int64_t> x, std::int64_t nm) {
    if (nm > 0) cands.push_back({{x.begin(), x.end()}, nm});
  });
  std::sort(cands.begin(), cands.end(), [](const Candidate& p, const Candidate& q) {
    return p.norm != q.norm ? p.norm < q.norm : p.x < q.x;
  });

  auto inner = [&](const Candidate& p, const Candidate& q) {
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) s += p.x[i] * a(i, j) * q.x[j];
    }
    return s;
  };

  std::vector<std::int64_t> best_key;
  std::vector<const Candidate*> best_basis;
  std::vector<const Candidate*> chosen;

  auto key_of = [&](const std::vector<const Candidate*>& basis) {
    std::vector<std::int64_t> key;
    for (const auto* c : basis) key.push_back(c->norm);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) key.push_back(-inner(*basis[i], *basis[j]));
    }
    return key;
  };

  auto search = [&](auto&& self) -> void {
    const int depth = static_cast<int>(chosen.size());
    if (depth == n) {
      auto key = key_of(chosen);
      if (best_key.empty() || key < best_key) {
        best_key = std::move(key);
        best_basis = chosen;
      }
      return;
    }
    const std::int64_t floor_norm = depth ? chosen.back()->norm : 0;
    for (const auto& c : cands) {
      if (c.norm < floor_norm) continue;
      if (!best_key.empty()) {
        // Candidates are sorted by norm, so once the diagonal prefix exceeds
        // the best one nothing later can win.
        bool prefix_equal = true;
        for (int j = 0; j < depth; ++j) prefix_equal = prefix_equal && chosen[j]->norm == best_key[j];
        if (prefix_equal && c.norm > best_key[depth]) break;
      }
      chosen.push_back(&c);
      if (extendable(chosen, n)) self(self);
      chosen.pop_back();
    }
  };
  search(search);

  IntMatrix local(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) local(i, j) = best_basis[j]->x[i];
  }
  const IntMatrix u = pre * local;
  return {t.transform(u), u};
}

Equivalence are_equivalent(const HalfIntegralMatrix& t1, const HalfIntegralMatrix& t2) {
  if (t1.degree() != t2.degree()) throw std::invalid_argument("are_equivalent: degree mismatch");
  if (t1.doubled().determinant() != t2.doubled().determinant()) return {false, std::nullopt};
  const Reduction r1 = reduce(t1);
  const Reduction r2 = reduce(t2);
  if (!(r1.reduced == r2.reduced)) return {false, std::nullopt};
  // t1[U1] = R = t2[U2]  =>  t1[U1 U2^{-1}] = t2
  return {true, r1.transform * unimodular_inverse(r2.transform)};
}

std::vector<HalfIntegralMatrix> enumerate_classes(int n, std::int64_t det_doubled_max) {
  if (n < 1 || n > 3) throw std::invalid_argument("enumerate_classes supports 1 <= n <= 3");
  std::vector<HalfIntegralMatrix> out;
  if (det_doubled_max < 1) return out;
  const std::int64_t d = det_doubled_max;

  std::set<std::pair<BigInt, HalfIntegralMatrix>> found;
  auto consider = [&](IntMatrix m) {
    HalfIntegralMatrix t(std::move(m));
    const Inspection info = inspect(t);
    if (info.positivity != Positivity::positive_definite || info.det_doubled > d) return;
    found.emplace(info.det_doubled, reduce(t).reduced);
  };

  if (n == 1) {
    for (std::int64_t a = 2; a <= d; a += 2) consider(IntMatrix{{a}});
  } else if (n == 2) {
    // Reduced binary: a11 <= a22, |a12| <= a11/2, a11*a22 <= 4/3 det.
    for (std::int64_t a11 = 2; 3 * a11 * a11 <= 4 * d; a11 += 2) {
      for (std::int64_t a22 = a11; 3 * a11 * a22 <= 4 * d; a22 += 2) {
        for (std::int64_t a12 = -a11 / 2; a12 <= a11 / 2; ++a12) {
          consider(IntMatrix{{a11, a12}, {a12, a22}});
        }
      }
    }
  } else {
    // Reduced ternary: a11 <= a22 <= a33, |a_ij| <= a_ii/2, a11*a22*a33 <= 2 det.
    for (std::int64_t a11 = 2; a11 * a11 * a11 <= 2 * d; a11 += 2) {
      for (std::int64_t a22 = a11; a11 * a22 * a22 <= 2 * d; a22 += 2) {
        for (std::int64_t a33 = a22; a11 * a22 * a33 <= 2 * d; a33 += 2) {
          for (std::int64_t a12 = -a11 / 2; a12 <= a11 / 2; ++a12) {
            for (std::int64_t a13 = -a11 / 2; a13 <= a11 / 2; ++a13) {
              for (std::int64_t a23 = -a22 / 2; a23 <= a22 / 2; ++a23) {
                consider(IntMatrix{{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}});
              }
            }
          }
        }
      }
    }
  }
  for (auto& entry : found) out.push_back(entry.second);
  return out;
}

HalfIntegralMatrix embed(const HalfIntegralMatrix& core, int n) {
  const int r = core.degree();
  if (r > n) throw std::invalid_argument("embed: core larger than target degree");
  IntMatrix m(n, n);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) m(n - r + i, n - r + j) = core.doubled()(i, j);
  }
  return HalfIntegralMatrix(std::move(m));
}

std::optional<HalfIntegralMatrix> core_of(const HalfIntegralMatrix& t, int rank) {
  const int n = t.degree();
  if (rank > n || rank < 0) return std::nullopt;
  const int z = n - rank;
  for (int i = 0; i < z; ++i) {
    for (int j = 0; j < n; ++j) {
      if (t.doubled()(i, j) != 0) return std::nullopt;
    }
  }
  IntMatrix m(rank, rank);
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) m(i, j) = t.doubled()(z + i, z + j);
  }
  return HalfIntegralMatrix(std::move(m));
}

}  // namespace singmod::lambda
