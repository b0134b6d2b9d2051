#include "singmod/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "singmod/arith.hpp"
#include "singmod/detail/fincke_pohst.hpp"
#include "singmod/error.hpp"
#include "singmod/parallel.hpp"

namespace singmod::lattice {
namespace {

IntMatrix cartan(int n, const std::vector<std::pair<int, int>>& edges) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (auto [a, b] : edges) g(a, b) = g(b, a) = -1;
  return g;
}

std::vector<std::pair<int, int>> chain(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return edges;
}

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

using Entry = RepresentationCounter::Entry;
using Candidates = std::vector<const Entry*>;

// Number of ways to complete columns depth.. given candidate lists already
// filtered against every earlier column.
std::uint64_t complete(const IntMatrix& a, int depth, const std::vector<Candidates>& lists) {
  const int s = a.rows();
  if (depth == s - 1) return lists[depth].size();
  std::uint64_t total = 0;
  std::vector<Candidates> next(lists.size());
  for (const Entry* e : lists[depth]) {
    bool empty = false;
    for (int j = depth + 1; j < s && !empty; ++j) {
      next[j].clear();
      for (const Entry* f : lists[j]) {
        if (dot(e->gx, f->x) == a(depth, j)) next[j].push_back(f);
      }
      empty = next[j].empty();
    }
    if (!empty) total += complete(a, depth + 1, next);
  }
  return total;
}

}  // namespace

GramMatrix::GramMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (!entries_.is_square()) throw std::invalid_argument("Gram matrix must be square");
  const auto info = lambda::inspect(HalfIntegralMatrix(entries_));
  if (info.positivity != lambda::Positivity::positive_definite) {
    throw std::invalid_argument("Gram matrix must be positive definite");
  }
}

std::vector<std::string> catalog_names() {
  return {"E8", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "D4", "Z<m>"};
}

GramMatrix catalog_lattice(const std::string& name) {
  if (name == "E8") {
    // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4 (0-based below).
    return GramMatrix(cartan(8, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}}));
  }
  if (name == "D4") return GramMatrix(cartan(4, {{0, 1}, {1, 2}, {1, 3}}));
  if (name.size() == 2 && name[0] == 'A' && name[1] >= '1' && name[1] <= '7') {
    const int n = name[1] - '0';
    return GramMatrix(cartan(n, chain(n)));
  }
  if (name.size() >= 2 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const int m = std::stoi(name.substr(1));
    if (m < 1 || m > 64) throw std::invalid_argument("Z<m> needs 1 <= m <= 64");
    IntMatrix g(m, m);
    for (int i = 0; i < m; ++i) g(i, i) = 2;
    return GramMatrix(g);
  }
  throw std::invalid_argument("unknown lattice '" + name + "'");
}

GramMatrix load_lattice(const std::string& name_or_path) {
  try {
    return catalog_lattice(name_or_path);
  } catch (const std::invalid_argument&) {
  }
  std::ifstream in(name_or_path);
  if (!in) throw std::invalid_argument("'" + name_or_path + "' is neither a catalog lattice nor a readable file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return GramMatrix(HalfIntegralMatrix::from_text(buffer.str()).doubled());
}

ShortVectors short_vectors(const GramMatrix& g, std::int64_t max_norm, bool keep_vectors) {
  if (max_norm < 0) throw std::invalid_argument("max_norm must be >= 0");
  ShortVectors out;
  detail::enumerate_short_vectors(g.entries(), max_norm, [&](std::span<const std::int64_t> x, std::int64_t n) {
    ++out.counts[n];
    if (keep_vectors) out.vectors[n].emplace_back(x.begin(), x.end());
  });
  return out;
}

RepresentationCounter::RepresentationCounter(const GramMatrix& g, std::int64_t max_norm)
    : g_(g), max_norm_(max_norm) {
  const IntMatrix& gm = g_.entries();
  const int m = gm.rows();
  detail::enumerate_short_vectors(gm, max_norm, [&](std::span<const std::int64_t> x, std::int64_t n) {
    if (n == 0) return;
    Entry e{{x.begin(), x.end()}, std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) e.gx[i] += gm(i, j) * e.x[j];
    }
    by_norm_[n].push_back(std::move(e));
  });
}

BigInt RepresentationCounter::count(const HalfIntegralMatrix& t) const {
  const IntMatrix& a_full = t.doubled();
  if (lambda::inspect(t).positivity == lambda::Positivity::indefinite) {
    throw std::invalid_argument("representation number needs positive semidefinite T");
  }
  // Columns with zero diagonal must be 0 in a definite lattice; semidefinite
  // T then has zero rows there too.
  std::vector<int> live;
  for (int j = 0; j < a_full.rows(); ++j) {
    if (a_full(j, j) != 0) live.push_back(j);
    if (a_full(j, j) > max_norm_) throw std::out_of_range("index norm exceeds the counter's bound");
  }
  if (live.empty()) return BigInt(1);

  std::vector<const std::vector<Entry>*> pools;
  for (int j : live) {
    const auto it = by_norm_.find(a_full(j, j));
    if (it == by_norm_.end()) return BigInt(0);
    pools.push_back(&it->second);
  }
  // Smallest pool first keeps the branching low.
  std::vector<int> order(live.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return pools[x]->size() < pools[y]->size(); });
  const int s = static_cast<int>(live.size());
  IntMatrix a(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) a(i, j) = a_full(live[order[i]], live[order[j]]);
  }
  std::vector<Candidates> lists(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    for (const Entry& e : *pools[order[j]]) lists[j].push_back(&e);
  }
  if (s == 1) return BigInt(static_cast<unsigned long>(lists[0].size()));

  const auto& first = lists[0];
  std::vector<std::uint64_t> partial(first.size(), 0);
  parallel_for(first.size(), [&](std::size_t idx) {
    std::vector<Candidates> filtered(static_cast<std::size_t>(s));
    const Entry* e = first[idx];
    for (int j = 1; j < s; ++j) {
      for (const Entry* f : lists[j]) {
        if (dot(e->gx, f->x) == a(0, j)) filtered[j].push_back(f);
      }
      if (filtered[j].empty()) return;
    }
    partial[idx] = complete(a, 1, filtered);
  });
  BigInt total(0);
  for (auto v : partial) total += static_cast<unsigned long>(v);
  return total;
}

BigInt representation_number(const GramMatrix& g, const HalfIntegralMatrix& t) {
  if (t.degree() > g.rank()) throw std::invalid_argument("degree of T exceeds the lattice rank");
  std::int64_t max_norm = 0;
  for (int i = 0; i < t.degree(); ++i) max_norm = std::max(max_norm, t.doubled()(i, i));
  return RepresentationCounter(g, max_norm).count(t);
}

fourier::FourierTable fourier_table(const GramMatrix& g, int degree, std::int64_t det_doubled_max) {
  if (degree < 0 || degree > 3) throw std::invalid_argument("theta tables support degree <= 3");
  fourier::FourierTable table;
  table.degree = degree;
  table.weight_times_two = g.rank();
  table.bounds = {degree, std::max<std::int64_t>(det_doubled_max, 0)};
  const auto keys = fourier::expected_keys(degree, table.bounds);
  std::int64_t max_norm = 0;
  for (const auto& key : keys) {
    for (int i = 0; i < degree; ++i) max_norm = std::max(max_norm, key.doubled()(i, i));
  }
  const RepresentationCounter counter(g, max_norm);
  for (const auto& key : keys) table.entries.emplace(key, counter.count(key));
  return table;
}

LatticeAutomorphism verify_automorphism(const GramMatrix& g, const IntMatrix& u, long p) {
  const int m = g.rank();
  if (u.rows() != m || u.cols() != m) throw std::invalid_argument("automorphism has the wrong shape");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  const IntMatrix image = g.entries().congruence(u);
  if (!(image == g.entries())) {
    std::ostringstream os;
    os << "U^T G U = " << image;
    throw CodedError("NOT_ISOMETRY", os.str());
  }
  const IntMatrix id = IntMatrix::identity(m);
  IntMatrix power = u;
  for (long j = 1; j <= p; ++j) {
    if (power == id) {
      if (j == p) return {u, p};
      throw CodedError("ORDER_MISMATCH", "U has order " + std::to_string(j) + ", expected " + std::to_string(p));
    }
    power = power * u;
  }
  throw CodedError("ORDER_MISMATCH", "U^" + std::to_string(p) + " is not the identity");
}

IntMatrix coxeter_element(const GramMatrix& g, const std::vector<int>& indices) {
  const int m = g.rank();
  IntMatrix c = IntMatrix::identity(m);
  for (int i : indices) {
    if (i < 0 || i >= m) throw std::invalid_argument("reflection index out of range");
    if (g.entries()(i, i) != 2) throw std::invalid_argument("reflection needs a norm-2 basis vector");
    IntMatrix s = IntMatrix::identity(m);
    for (int j = 0; j < m; ++j) s(i, j) -= g.entries()(i, j);
    c = c * s;
  }
  return c;
}

std::vector<BigInt> characteristic_polynomial(const IntMatrix& u) {
  if (!u.is_square()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const int n = u.rows();
  using Big = std::vector<std::vector<BigInt>>;
  Big a(n, std::vector<BigInt>(n)), mk(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = static_cast<long>(u(i, j));
  }
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, 0);
  c[n] = 1;
  for (int k = 1; k <= n; ++k) {
    Big next(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) next[i][j] += a[i][l] * mk[l][j];
      }
      next[i][i] += c[n - k + 1];
    }
    mk = std::move(next);
    BigInt trace(0);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) trace += a[i][l] * mk[l][i];
    }
    c[n - k] = -trace / k;
  }
  return c;
}

namespace {

// Divides poly by the monic divisor in place if exact; returns whether it was.
bool divide_exact(std::vector<BigInt>& poly, const std::vector<BigInt>& divisor) {
  const std::size_t d = divisor.size() - 1;
  if (poly.size() - 1 < d) return false;
  std::vector<BigInt> rem = poly;
  std::vector<BigInt> quot(poly.size() - d, 0);
  for (std::size_t i = poly.size() - 1; i + 1 > d; --i) {
    const BigInt lead = rem[i];
    quot[i - d] = lead;
    for (std::size_t j = 0; j <= d; ++j) rem[i - d + j] -= lead * divisor[j];
    if (i == d) break;
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (rem[i] != 0) return false;
  }
  poly = std::move(quot);
  return true;
}

}  // namespace

AlphaBeta charpoly_alpha_beta(const LatticeAutomorphism& a, long p) {
  if (a.order != p) throw std::invalid_argument("automorphism is not certified of order p");
  std::vector<BigInt> chi = characteristic_polynomial(a.u);
  const std::vector<BigInt> linear{BigInt(-1), BigInt(1)};
  const std::vector<BigInt> cyclotomic(static_cast<std::size_t>(p), BigInt(1));
  AlphaBeta out;
  while (chi.size() > 1 && divide_exact(chi, linear)) ++out.alpha;
  while (chi.size() > 1 && divide_exact(chi, cyclotomic)) ++out.beta;
  if (chi.size() != 1 || chi[0] != 1) throw CodedError("UNEXPECTED_FACTOR", "characteristic polynomial has a factor other than X - 1 and Phi_p");
  return out;
}

ThetaPRank theta_prank(const GramMatrix& g, long p, int rank_bound, std::int64_t det_doubled_max,
                       const std::optional<LatticeAutomorphism>& automorphism) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (rank_bound < 0 || rank_bound > 3) throw std::invalid_argument("rank_bound must be in [0, 3]");
  const auto table = fourier_table(g, rank_bound, det_doubled_max);
  ThetaPRank out;
  out.vanishing_verified.assign(static_cast<std::size_t>(rank_bound) + 1, true);
  for (const auto& key : fourier::expected_keys(table.degree, table.bounds)) {
    const BigInt& value = table.entries.at(key);
    ScannedValue sv{key, key.doubled().rank(), value,
                    mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(p)) != 0};
    if (!sv.divisible) {
      out.vanishing_verified[sv.rank] = false;
      if (!out.witness || sv.rank > out.r_lower) {
        out.r_lower = sv.rank;
        out.witness = key;
      }
    }
    out.certificate.push_back(std::move(sv));
  }
  out.certified = fourier::p_rank(table, p).certified;
  const bool congruent = floor_mod(g.rank() - out.r_lower, p - 1) == 0;
  if (out.r_lower + 1 <= rank_bound && out.vanishing_verified[out.r_lower + 1] && !congruent) {
    out.congruence_consistent = false;
  }
  if (automorphism) {
    const auto certified = verify_automorphism(g, automorphism->u, p);
    out.alpha = charpoly_alpha_beta(certified, p).alpha;
    out.alpha_consistent = out.r_lower <= *out.alpha;
  }
  return out;
}

}  // namespace singmod::lattice
