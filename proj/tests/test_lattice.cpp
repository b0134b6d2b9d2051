#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "singmod/error.hpp"
#include "singmod/fourier.hpp"
#include "singmod/lattice.hpp"
#include "singmod/qseries.hpp"

using namespace singmod;
using namespace singmod::lattice;
using lambda::enumerate_classes;
using lambda::inspect;

namespace {

HalfIntegralMatrix him(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return HalfIntegralMatrix(IntMatrix(rows));
}

// E8 in the even coordinate model: x in Z^8 or (Z + 1/2)^8 with even
// coordinate sum. Stored doubled as y = 2x, so the norm x.x is (sum y_i^2) / 4.
std::vector<std::vector<int>> e8_model_vectors(int norm) {
  std::vector<std::vector<int>> out;
  std::vector<int> y(8);
  std::function<void(int)> rec = [&](int i) {
    if (i == 8) {
      int sq = 0, sum = 0;
      for (int v : y) sq += v * v, sum += v;
      const bool half = y[0] % 2 != 0;
      for (int v : y) {
        if ((v % 2 != 0) != half) return;
      }
      if (sq != 4 * norm || sum % 4 != 0) return;
      out.push_back(y);
      return;
    }
    for (int v = -4; v <= 4; ++v) {
      y[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// All x in a box big enough for G[x] <= max_norm, counted by norm.
std::map<std::int64_t, std::uint64_t> brute_counts(const GramMatrix& g, std::int64_t max_norm) {
  const int n = g.rank();
  // Box from the diagonal of G^{-1}: |x_i| <= sqrt(max_norm * (G^{-1})_ii).
  std::vector<std::vector<double>> a(n, std::vector<double>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = double(g.entries()(i, j));
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<long> box(n);
  for (int i = 0; i < n; ++i) box[i] = long(std::floor(std::sqrt(max_norm * a[i][n + i] / a[i][i]) + 1e-9));
  std::map<std::int64_t, std::uint64_t> counts;
  std::vector<std::int64_t> x(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::int64_t v = 0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) v += x[r] * g.entries()(r, c) * x[c];
      if (v <= max_norm) ++counts[v];
      return;
    }
    for (long t = -box[i]; t <= box[i]; ++t) {
      x[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
  return counts;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const CodedError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("catalog") {
  const auto e8 = catalog_lattice("E8");
  CHECK(e8.rank() == 8);
  CHECK(e8.entries().determinant() == 1);
  CHECK(catalog_lattice("D4").entries().determinant() == 4);
  for (int n = 1; n <= 7; ++n) {
    CHECK(catalog_lattice("A" + std::to_string(n)).entries().determinant() == n + 1);
  }
  CHECK(catalog_lattice("Z3").entries() == IntMatrix({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  CHECK_THROWS_AS(catalog_lattice("A8"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_lattice("Z0"), std::invalid_argument);
  CHECK_THROWS_AS(GramMatrix(IntMatrix({{2, 3}, {3, 2}})), std::invalid_argument);
  CHECK_THROWS_AS(GramMatrix(IntMatrix({{1}})), std::invalid_argument);
  CHECK(load_lattice("E8") == e8);
}

TEST_CASE("short vector examples") {
  const auto e8 = catalog_lattice("E8");
  const auto sv = short_vectors(e8, 4);
  CHECK(sv.counts.at(0) == 1);
  CHECK(sv.counts.at(2) == 240);
  CHECK(sv.counts.at(4) == 2160);
  CHECK(sv.vectors.at(2).size() == 240);

  const auto z = short_vectors(catalog_lattice("Z1"), 8);
  CHECK(z.counts == std::map<std::int64_t, std::uint64_t>{{0, 1}, {2, 2}, {8, 2}});

  CHECK(e8_model_vectors(2).size() == 240);
  CHECK(e8_model_vectors(4).size() == 2160);
}

TEST_CASE("short vectors match a box search") {
  for (const std::string name : {"A2", "A3", "A4", "A6", "D4", "Z3"}) {
    CAPTURE(name);
    const auto g = catalog_lattice(name);
    CHECK(short_vectors(g, 12, false).counts == brute_counts(g, 12));
  }
}

TEST_CASE("E8 theta series is E_4") {
  const auto counts = short_vectors(catalog_lattice("E8"), 20, false).counts;
  const auto e4 = qseries::eisenstein_qexp(4, 10);
  for (long n = 0; n <= 10; ++n) CHECK(BigRational(BigInt(counts.at(2 * n))) == e4[n]);
}

TEST_CASE("representation numbers") {
  const auto e8 = catalog_lattice("E8");
  CHECK(representation_number(e8, him({{2}})) == 240);
  CHECK(representation_number(e8, HalfIntegralMatrix::zero(2)) == 1);
  CHECK(representation_number(catalog_lattice("A3"), HalfIntegralMatrix::zero(3)) == 1);

  // Ordered root pairs in the coordinate model, by inner product.
  const auto roots = e8_model_vectors(2);
  std::map<int, long> by_ip;
  for (const auto& x : roots) {
    for (const auto& y : roots) {
      int ip = 0;
      for (int i = 0; i < 8; ++i) ip += x[i] * y[i];
      ++by_ip[ip / 4];
    }
  }
  CHECK(by_ip[0] == 30240);
  CHECK(by_ip[1] == 13440);
  CHECK(representation_number(e8, him({{2, 0}, {0, 2}})) == by_ip[0]);
  CHECK(representation_number(e8, him({{2, 1}, {1, 2}})) == by_ip[1]);
  CHECK(representation_number(e8, him({{2, 2}, {2, 2}})) == by_ip[2]);
  CHECK(representation_number(e8, him({{0, 0}, {0, 2}})) == 240);
}

TEST_CASE("representation numbers match pair and triple enumeration") {
  for (const std::string name : {"A3", "D4", "A5"}) {
    const auto g = catalog_lattice(name);
    const auto sv = short_vectors(g, 6);
    std::vector<std::vector<std::int64_t>> all;
    for (const auto& [norm, vs] : sv.vectors) all.insert(all.end(), vs.begin(), vs.end());
    auto ip = [&](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
      std::int64_t s = 0;
      for (int i = 0; i < g.rank(); ++i)
        for (int j = 0; j < g.rank(); ++j) s += x[i] * g.entries()(i, j) * y[j];
      return s;
    };
    std::map<HalfIntegralMatrix, long> pairs;
    for (const auto& x : all)
      for (const auto& y : all) {
        const auto t = HalfIntegralMatrix(IntMatrix{{ip(x, x), ip(x, y)}, {ip(x, y), ip(y, y)}});
        ++pairs[t];
      }
    for (const auto& [t, c] : pairs) {
      CAPTURE(name);
      CHECK(representation_number(g, t) == c);
    }
  }
}

TEST_CASE("representation numbers are class invariants") {
  std::mt19937_64 rng(17);
  const auto d4 = catalog_lattice("D4");
  for (const auto& t : enumerate_classes(3, 24)) {
    const BigInt base = representation_number(d4, t);
    IntMatrix u = IntMatrix::identity(3);
    u(0, 1) = long(rng() % 3) - 1;
    u(2, 0) = long(rng() % 3) - 1;
    u(1, 2) = long(rng() % 3) - 1;
    if (u.determinant() != 1 && u.determinant() != -1) continue;
    CHECK(representation_number(d4, t.transform(u)) == base);
  }
}

TEST_CASE("theta tables") {
  const auto e8 = catalog_lattice("E8");
  const auto one = fourier_table(e8, 1, 8);
  CHECK(one.weight_times_two == 8);
  const auto e4 = qseries::eisenstein_qexp(4, 4);
  REQUIRE(one.entries.size() == 5);
  CHECK(one.entries.at(HalfIntegralMatrix::zero(1)) == 1);
  for (long n = 1; n <= 4; ++n) CHECK(BigRational(one.entries.at(him({{2 * n}}))) == e4[n]);

  const auto two = fourier_table(e8, 2, 3);
  CHECK(two.entries.at(him({{2, 1}, {1, 2}})) == 13440);
  CHECK(two.entries.at(him({{0, 0}, {0, 2}})) == 240);

  const auto z = fourier_table(catalog_lattice("A2"), 3, 0);
  CHECK(z.entries.size() == 1);
  CHECK(z.entries.at(HalfIntegralMatrix::zero(3)) == 1);

  for (const auto& key : fourier::expected_keys(2, {2, 16})) {
    CHECK(fourier_table(e8, 2, 16).entries.count(key) == 1);
  }
}

TEST_CASE("automorphism checks") {
  const auto a6 = catalog_lattice("A6");
  CHECK(code_of([&] { verify_automorphism(a6, IntMatrix::identity(6), 7); }) == "ORDER_MISMATCH");

  const IntMatrix cox = coxeter_element(a6, {0, 1, 2, 3, 4, 5});
  const auto aut = verify_automorphism(a6, cox, 7);
  CHECK(aut.order == 7);
  const auto ab = charpoly_alpha_beta(aut, 7);
  CHECK(ab.alpha == 0);
  CHECK(ab.beta == 1);
  CHECK(code_of([&] { verify_automorphism(a6, cox, 5); }) == "ORDER_MISMATCH");

  const auto e8 = catalog_lattice("E8");
  IntMatrix bad = IntMatrix::identity(8);
  bad(0, 1) = 1;
  CHECK(code_of([&] { verify_automorphism(e8, bad, 7); }) == "NOT_ISOMETRY");

  // A6 (+) Z^2: the Coxeter element extended by the identity.
  const GramMatrix sum(block_diag(a6.entries(), IntMatrix{{2, 0}, {0, 2}}));
  const auto ext = verify_automorphism(sum, block_diag(cox, IntMatrix::identity(2)), 7);
  const auto ab2 = charpoly_alpha_beta(ext, 7);
  CHECK(ab2.alpha == 2);
  CHECK(ab2.beta == 1);

  // E8 Coxeter element of its A6 sub-diagram.
  const auto e8aut = verify_automorphism(e8, coxeter_element(e8, {2, 3, 4, 5, 6, 7}), 7);
  const auto ab3 = charpoly_alpha_beta(e8aut, 7);
  CHECK(ab3.alpha == 2);
  CHECK(ab3.beta == 1);

  // An order-3 rotation of A2 has alpha = 0, beta = 1 on rank p - 1.
  const auto a2 = catalog_lattice("A2");
  const auto r3 = charpoly_alpha_beta(verify_automorphism(a2, coxeter_element(a2, {0, 1}), 3), 3);
  CHECK(r3.alpha == 0);
  CHECK(r3.beta == 1);

  CHECK_THROWS_AS(coxeter_element(a2, {2}), std::invalid_argument);
}

TEST_CASE("characteristic polynomial agrees with det(xI - U)") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + int(rng() % 5);
    IntMatrix u(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u(i, j) = long(rng() % 7) - 3;
    const auto chi = characteristic_polynomial(u);
    REQUIRE(chi.size() == std::size_t(n) + 1);
    CHECK(chi.back() == 1);
    for (long x = -3; x <= 3; ++x) {
      IntMatrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = (i == j ? x : 0) - u(i, j);
      BigInt val(0), xp(1);
      for (const auto& c : chi) {
        val += c * xp;
        xp *= x;
      }
      CHECK(val == m.determinant());
    }
  }
}

TEST_CASE("fixed-point-free automorphism forces divisibility") {
  const auto a6 = catalog_lattice("A6");
  const auto table = fourier_table(a6, 2, 12);
  for (const auto& [t, c] : table.entries) {
    if (inspect(t).rank == 0) continue;
    CAPTURE(t.to_text());
    CHECK(c % 7 == 0);
  }
  // Brute-force counts of single vectors agree.
  for (const auto& [norm, c] : brute_counts(a6, 12)) {
    if (norm > 0) CHECK(c % 7 == 0);
  }
}

TEST_CASE("theta p-rank examples") {
  const auto e8 = catalog_lattice("E8");
  const auto five = theta_prank(e8, 5, 2, 8);
  CHECK(five.r_lower == 0);
  CHECK(five.vanishing_verified[1]);
  CHECK(five.vanishing_verified[2]);
  CHECK(five.certified);

  const auto eleven = theta_prank(e8, 11, 1, 8);
  CHECK(eleven.r_lower == 1);
  // 240 is prime to 11 and the table has degree 1, so nothing is left to rule out.
  CHECK(eleven.certified);

  const auto seven = theta_prank(e8, 7, 3, 16);
  CHECK(seven.r_lower == 2);
  REQUIRE(seven.witness.has_value());
  CHECK(inspect(*seven.witness).rank == 2);
  CHECK(seven.vanishing_verified[3]);
  CHECK(seven.certified);
  CHECK(seven.congruence_consistent);
  bool witness_seen = false;
  for (const auto& s : seven.certificate) {
    CHECK(s.divisible == (s.value % 7 == 0));
    if (s.rank == 3) CHECK(s.divisible);
    if (s.index == *seven.witness) {
      witness_seen = true;
      CHECK_FALSE(s.divisible);
    }
  }
  CHECK(witness_seen);

  const auto a6 = catalog_lattice("A6");
  const auto aut = verify_automorphism(a6, coxeter_element(a6, {0, 1, 2, 3, 4, 5}), 7);
  const auto with_aut = theta_prank(a6, 7, 2, 12, aut);
  CHECK(with_aut.r_lower == 0);
  REQUIRE(with_aut.alpha.has_value());
  CHECK(*with_aut.alpha == 0);
  CHECK(with_aut.alpha_consistent == std::optional<bool>(true));
}
