#include "singmod/jacobi.hpp"

#include <stdexcept>

#include "singmod/arith.hpp"
#include "singmod/detail/fincke_pohst.hpp"
#include "singmod/parallel.hpp"

namespace singmod::jacobi {

JacobiTable fj_coefficient_table(const lattice::GramMatrix& g, long m, long n_max) {
  if (m < 1) throw std::invalid_argument("index m must be >= 1");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  JacobiTable table;
  table.index = m;
  table.weight_times_two = g.rank();
  table.n_max = n_max;

  const auto vectors = lattice::short_vectors(g, 2 * std::max(m, n_max));
  const std::vector<std::vector<std::int64_t>> none;
  const auto find = [&](long norm) -> const std::vector<std::vector<std::int64_t>>& {
    const auto it = vectors.vectors.find(2 * norm);
    return it == vectors.vectors.end() ? none : it->second;
  };
  // y carries G y so the inner product is a plain dot product.
  std::vector<std::vector<std::int64_t>> gy;
  for (const auto& y : find(m)) {
    std::vector<std::int64_t> v(y.size(), 0);
    for (int i = 0; i < g.rank(); ++i) {
      for (int j = 0; j < g.rank(); ++j) v[i] += g.entries()(i, j) * y[j];
    }
    gy.push_back(std::move(v));
  }

  std::vector<std::map<long, std::uint64_t>> rows(static_cast<std::size_t>(n_max) + 1);
  parallel_for(rows.size(), [&](std::size_t n) {
    for (const auto& x : find(static_cast<long>(n))) {
      for (const auto& v : gy) {
        std::int64_t r = 0;
        for (std::size_t i = 0; i < x.size(); ++i) r += x[i] * v[i];
        ++rows[n][r];
      }
    }
  });
  for (long n = 0; n <= n_max; ++n) {
    for (long r = 0; r * r <= 4 * n * m; ++r) {
      for (long signed_r : {r, -r}) {
        const auto it = rows[n].find(signed_r);
        table.entries[{n, signed_r}] = it == rows[n].end() ? BigInt(0) : BigInt(static_cast<unsigned long>(it->second));
        if (r == 0) break;
      }
    }
  }
  return table;
}

JClass j_class(long n, long r, long m) {
  if (m < 1) throw std::invalid_argument("index m must be >= 1");
  const long disc = 4 * n * m - r * r;
  if (disc < 0) throw std::invalid_argument("4nm - r^2 must be >= 0");
  const long up = floor_mod(r, 2 * m);
  const long down = floor_mod(-r, 2 * m);
  return {disc, std::min(up, down)};
}

std::map<long, std::vector<ThetaTerm>> theta_decompose(const JacobiTable& table) {
  const long m = table.index;
  if (m < 1) throw std::invalid_argument("index m must be >= 1");
  const bool identify_signs = table.weight_times_two % 4 == 0;
  std::map<long, std::map<long, BigInt>> collected;
  const long top = identify_signs ? m : 2 * m - 1;
  for (long mu = 0; mu <= top; ++mu) collected[mu];
  for (const auto& [nr, c] : table.entries) {
    const auto [n, r] = nr;
    const long disc = 4 * m * n - r * r;
    if (disc < 0) throw std::invalid_argument("table entry outside 4nm - r^2 >= 0");
    const long mu = identify_signs ? j_class(n, r, m).residue : floor_mod(r, 2 * m);
    auto [it, inserted] = collected[mu].emplace(disc, c);
    if (!inserted && it->second != c) {
      throw std::invalid_argument("table is not J-invariant at (n, r) = (" + std::to_string(n) + ", " +
                                  std::to_string(r) + ")");
    }
  }
  std::map<long, std::vector<ThetaTerm>> out;
  for (auto& [mu, terms] : collected) {
    auto& seq = out[mu];
    for (auto& [exponent, c] : terms) seq.push_back({exponent, c});
  }
  return out;
}

bool jacobi_escape_possible(long weight_times_two, long index_rank, long p, long m) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const long gap = weight_times_two - index_rank;
  if (gap == 0) return true;
  const BigInt modulus = BigInt(p - 1) * power(BigInt(p), static_cast<unsigned long>(m - 1));
  return mpz_divisible_p(BigInt(gap).get_mpz_t(), modulus.get_mpz_t()) != 0;
}

}  // namespace singmod::jacobi
