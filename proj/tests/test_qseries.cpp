#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "singmod/arith.hpp"
#include "singmod/constant_verifier.hpp"
#include "singmod/qseries.hpp"

using namespace singmod;
using namespace singmod::qseries;

namespace {

std::vector<BigRational> coeffs(std::initializer_list<long> xs) {
  std::vector<BigRational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Delta by multiplying out q * prod (1 - q^n)^24 term by term.
std::vector<mpz_class> naive_delta(long len) {
  std::vector<mpz_class> f(static_cast<std::size_t>(len + 1), 0);
  f[1] = 1;
  for (long n = 1; n <= len; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (long i = len; i >= n; --i) f[i] -= f[i - n];
    }
  }
  return f;
}

QExpansion random_series(std::mt19937_64& rng, long len, long w2) {
  std::uniform_int_distribution<long> dist(-50, 50);
  std::vector<BigRational> c;
  for (long n = 0; n <= len; ++n) c.emplace_back(BigRational(dist(rng), 1 + (dist(rng) & 3)));
  return QExpansion(std::move(c), w2);
}

class ZeroOracle final : public CoefficientOracle {
 public:
  std::optional<BigRational> coefficient(long) const override { return BigRational(0); }
};

}  // namespace

TEST_CASE("Eisenstein expansions") {
  CHECK(eisenstein_qexp(4, 2).coefficients() == coeffs({1, 240, 2160}));
  CHECK(eisenstein_qexp(6, 1).coefficients() == coeffs({1, -504}));
  CHECK(eisenstein_qexp(4, 3).reduce(ModulusContext(5, 1)).coefficients() ==
        coeffs({1, 0, 0, 0}));
  CHECK_THROWS_AS(eisenstein_qexp(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(eisenstein_qexp(2, 4), std::invalid_argument);
}

TEST_CASE("E_{p-1} is 1 mod p") {
  for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
    const auto e = eisenstein_qexp(p - 1, 60).reduce(ModulusContext(p, 1));
    CHECK(e[0] == BigRational(1));
    for (long n = 1; n <= 60; ++n) CHECK(e[n].is_zero());
  }
  // Not mod p^2 in general.
  const auto e4 = eisenstein_qexp(4, 5).reduce(ModulusContext(5, 2));
  CHECK_FALSE(e4[1].is_zero());
}

TEST_CASE("Delta against two independent constructions") {
  const long len = 60;
  const auto d = delta_qexp(len);
  const auto naive = naive_delta(len);
  for (long n = 0; n <= len; ++n) CHECK(d[n].raw() == mpq_class(naive[n]));

  const auto e4 = eisenstein_qexp(4, len);
  const auto e6 = eisenstein_qexp(6, len);
  auto mul = [&](const QExpansion& a, const QExpansion& b, long n) {
    mpq_class s = 0;
    for (long i = 0; i <= n; ++i) s += a[i].raw() * b[n - i].raw();
    return s;
  };
  std::vector<mpq_class> e4sq(len + 1);
  for (long n = 0; n <= len; ++n) e4sq[n] = mul(e4, e4, n);
  for (long n = 0; n <= len; ++n) {
    mpq_class cube = 0;
    for (long i = 0; i <= n; ++i) cube += e4sq[i] * e4[n - i].raw();
    CHECK(d[n].raw() == (cube - mul(e6, e6, n)) / 1728);
  }
  CHECK(d[2] == BigRational(-24));
  CHECK(d[12] == BigRational(-370944));
}

TEST_CASE("reading past the truncation throws") {
  const auto e = eisenstein_qexp(4, 3);
  CHECK_THROWS_AS(e[4], TruncationError);
  CHECK_THROWS_AS(e[-1], TruncationError);
  CHECK_THROWS_AS(e.truncate(5), TruncationError);
  CHECK(e.truncate(1).coefficients() == coeffs({1, 240}));
}

TEST_CASE("modular reduction") {
  const ModulusContext ctx(7, 2);
  CHECK(ctx.modulus() == 49);
  CHECK(ctx.beta() == 1);
  CHECK(ctx.reduce(BigRational(-1)) == 48);
  CHECK(ctx.reduce(BigRational(1, 2)) == 25);
  CHECK_THROWS_AS(ctx.reduce(BigRational(1, 7)), std::domain_error);
  CHECK_THROWS_AS(ModulusContext(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModulusContext(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModulusContext(5, 0), std::invalid_argument);
}

TEST_CASE("T_l examples") {
  const auto t = hecke_tl(eisenstein_qexp(4, 14), 7);
  CHECK(t.truncation() == 2);
  CHECK(t[0] == BigRational(344));
  CHECK(t[1] == BigRational(82560));

  const QExpansion c(coeffs({3, 0, 0, 0, 0, 0}), 8);
  CHECK(hecke_tl(c, 5)[0] == BigRational(3 * (1 + 125)));
  CHECK_THROWS_AS(hecke_tl(c, 4), std::invalid_argument);
  CHECK_THROWS_AS(hecke_tl(QExpansion(coeffs({1, 0}), 9), 5), std::invalid_argument);
}

TEST_CASE("E_k is a T_l eigenform") {
  std::mt19937_64 rng(7);
  const auto primes = primes_in(2, 60);
  for (long k : {4L, 6L, 8L, 12L}) {
    const auto e = eisenstein_qexp(k, 600);
    for (int trial = 0; trial < 10; ++trial) {
      const long l = primes[rng() % primes.size()];
      const auto t = hecke_tl(e, l);
      const BigRational lambda = BigRational(1) + power(BigRational(l), k - 1);
      for (long n = 0; n <= t.truncation(); ++n) CHECK(t[n] == lambda * e[n]);
    }
  }
}

TEST_CASE("Delta eigenvalues are tau(l)") {
  const auto d = delta_qexp(200);
  for (long l : {2L, 3L, 5L, 7L}) {
    const auto t = hecke_tl(d, l);
    for (long n = 0; n <= t.truncation(); ++n) CHECK(t[n] == d[l] * d[n]);
  }
}

TEST_CASE("Hecke operators are additive") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(rng, 200, 8);
    const auto g = random_series(rng, 200, 8);
    for (long l : {2L, 3L, 7L, 13L}) CHECK(hecke_tl(f + g, l) == hecke_tl(f, l) + hecke_tl(g, l));
    const auto fh = random_series(rng, 200, 7);
    const auto gh = random_series(rng, 200, 7);
    for (long l : {3L, 5L, 7L}) {
      CHECK(hecke_tl2_half(fh + gh, l) == hecke_tl2_half(fh, l) + hecke_tl2_half(gh, l));
    }
  }
}

TEST_CASE("T_{l^2} examples") {
  std::vector<BigRational> one(26, BigRational(0));
  one[0] = 1;
  CHECK(hecke_tl2_half(QExpansion(one, 9), 5)[0] == BigRational(1 + 78125));
  std::vector<BigRational> single(26, BigRational(0));
  single[1] = 1;
  CHECK(hecke_tl2_half(QExpansion(single, 9), 5)[1] == BigRational(125));
  CHECK(legendre(BigInt(3), 7) == -1);
  CHECK_THROWS_AS(hecke_tl2_half(QExpansion(one, 8), 5), std::invalid_argument);
}

TEST_CASE("T_{l^2} matches the three-sum display") {
  std::mt19937_64 rng(3);
  for (long w2 : {3L, 5L, 7L, 9L, 13L}) {
    for (long l : {3L, 5L, 7L, 11L}) {
      const auto f = random_series(rng, 10 * l * l, w2);
      std::vector<mpq_class> a;
      for (const auto& c : f.coefficients()) a.push_back(c.raw());
      const auto t = hecke_tl2_half(f, l);
      CHECK(t.truncation() == 10);
      for (long n = 0; n <= 10; ++n) {
        CAPTURE(w2);
        CAPTURE(l);
        CAPTURE(n);
        CHECK(t[n].raw() == oracle::hecke_tl2_half(a, n, l, w2));
      }
    }
  }
}

TEST_CASE("Hecke images stay reduced") {
  const ModulusContext ctx(5, 2);
  const auto t = hecke_tl(eisenstein_qexp(4, 30).reduce(ctx), 3);
  REQUIRE(t.modulus().has_value());
  for (const auto& c : t.coefficients()) {
    CHECK(c.raw() >= 0);
    CHECK(c.raw() < 25);
  }
}

TEST_CASE("Sturm bounds") {
  CHECK(sturm_bound(72, 1) == 3);
  CHECK(sturm_bound(8, 1) == 0);
  CHECK(sturm_bound(7, 48) == 16);
  for (long w = 1; w <= 60; ++w) {
    CHECK(sturm_bound(w, 1) <= sturm_bound(w + 1, 1));
    CHECK(sturm_bound(w, 6) <= sturm_bound(w, 12));
  }
  CHECK_THROWS_AS(sturm_bound(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sturm_bound(8, 0), std::invalid_argument);
}

TEST_CASE("verifier verdicts") {
  SUBCASE("E_{p-1} is constant 1") {
    for (long p : {5L, 7L, 11L, 13L}) {
      const auto v = finite_support_implies_constant(EisensteinOracle(p - 1),
                                                     {2 * (p - 1), 1, 1, ModulusContext(p, 1), 0});
      CHECK(v.kind == VerdictKind::constant);
      CHECK(v.constant == 1);
    }
  }
  SUBCASE("Delta mod 7 violates a claimed bound of 1") {
    const SeriesOracle delta(delta_qexp(2000));
    const auto v = finite_support_implies_constant(delta, {24, 1, 1, ModulusContext(7, 1), 1});
    CHECK(v.kind == VerdictKind::premise_violated);
    CHECK(v.index == 2);
  }
  SUBCASE("zero oracle") {
    const auto v = finite_support_implies_constant(ZeroOracle(), {8, 1, 1, ModulusContext(3, 2), 0});
    CHECK(v.kind == VerdictKind::constant);
    CHECK(v.constant == 0);
  }
  SUBCASE("a polynomial is never modular") {
    std::vector<BigRational> c(1000, BigRational(0));
    c[0] = 1;
    c[1] = 1;
    const auto v = finite_support_implies_constant(SeriesOracle(QExpansion(c, 8)),
                                                   {8, 1, 1, ModulusContext(5, 1), 1});
    CHECK(v.kind == VerdictKind::contradiction_witness);
    CHECK(v.l2 == 11);
    CHECK(v.l1 == 31);
    CHECK(v.support_degree == 1);
    CHECK(v.index == 11);
    CHECK(v.witness_value == 1331 % 5);
  }
  SUBCASE("half-integral weight witness") {
    std::vector<BigRational> c(1000, BigRational(0));
    c[1] = 1;
    const auto v = finite_support_implies_constant(SeriesOracle(QExpansion(c, 9)),
                                                   {9, 1, 1, ModulusContext(5, 1), 1});
    CHECK(v.kind == VerdictKind::contradiction_witness);
    CHECK(v.index == 121);
    // l2^{2k-2} a(d*) with 2k - 2 = 7
    CHECK(v.witness_value == power(BigInt(11), 7) % 5);
  }
  SUBCASE("oracle refusal") {
    const SeriesOracle short_series(eisenstein_qexp(4, 10));
    CHECK_THROWS_AS(
        finite_support_implies_constant(short_series, {8, 1, 1, ModulusContext(5, 1), 0}),
        OracleRefusal);
  }
}
