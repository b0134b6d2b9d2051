#include "singmod/qseries.hpp"

#include <stdexcept>
#include <string>

#include "singmod/arith.hpp"

namespace singmod::qseries {

ModulusContext::ModulusContext(long p, long m) : p_(p), m_(m) {
  if (p < 3 || !is_prime(p)) {
    throw std::invalid_argument("modulus: p must be an odd prime, got " + std::to_string(p));
  }
  if (m < 1) throw std::invalid_argument("modulus: exponent m must be >= 1");
  modulus_ = power(BigInt(p), static_cast<unsigned long>(m));
}

BigInt ModulusContext::reduce(const BigRational& q) const {
  if (!q.is_zero() && valuation(q, p_).value() < 0) {
    throw std::domain_error("cannot reduce " + q.str() + " modulo " + std::to_string(p_) + "^" +
                            std::to_string(m_) + ": negative valuation");
  }
  BigInt inverse;
  const BigInt den = q.denominator();
  mpz_invert(inverse.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t());
  BigInt r = q.numerator() * inverse;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

QExpansion::QExpansion(std::vector<BigRational> coefficients, long weight_times_two, long level)
    : coefficients_(std::move(coefficients)), weight_times_two_(weight_times_two), level_(level) {
  if (coefficients_.empty()) throw std::invalid_argument("q-expansion needs at least a(0)");
  if (level_ < 1) throw std::invalid_argument("level must be positive");
}

const BigRational& QExpansion::operator[](long n) const {
  if (n < 0 || n > truncation()) {
    throw TruncationError("coefficient q^" + std::to_string(n) + " requested beyond truncation " +
                          std::to_string(truncation()));
  }
  return coefficients_[static_cast<std::size_t>(n)];
}

QExpansion QExpansion::reduce(const ModulusContext& ctx) const {
  if (modulus_ && !(*modulus_ == ctx)) {
    const BigInt& have = modulus_->modulus();
    if (have % ctx.modulus() != 0) {
      throw std::domain_error("series already reduced modulo an incompatible modulus");
    }
  }
  QExpansion out = *this;
  for (auto& c : out.coefficients_) c = BigRational(ctx.reduce(c));
  out.modulus_ = ctx;
  return out;
}

QExpansion QExpansion::truncate(long new_truncation) const {
  if (new_truncation < 0 || new_truncation > truncation()) {
    throw TruncationError("cannot extend a series by truncating it");
  }
  QExpansion out = *this;
  out.coefficients_.resize(static_cast<std::size_t>(new_truncation + 1));
  return out;
}

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
  if (a.weight_times_two_ != b.weight_times_two_ || a.level_ != b.level_) {
    throw std::invalid_argument("adding series of different weight or level");
  }
  const long l = std::min(a.truncation(), b.truncation());
  std::vector<BigRational> c;
  c.reserve(static_cast<std::size_t>(l + 1));
  for (long n = 0; n <= l; ++n) c.push_back(a[n] + b[n]);
  QExpansion out(std::move(c), a.weight_times_two_, a.level_);
  if (a.modulus_) return out.reduce(*a.modulus_);
  if (b.modulus_) return out.reduce(*b.modulus_);
  return out;
}

QExpansion operator*(const BigRational& s, const QExpansion& f) {
  QExpansion out = f;
  for (auto& c : out.coefficients_) c *= s;
  if (f.modulus_) return out.reduce(*f.modulus_);
  return out;
}

bool operator==(const QExpansion& a, const QExpansion& b) {
  return a.weight_times_two_ == b.weight_times_two_ && a.level_ == b.level_ &&
         a.modulus_ == b.modulus_ && a.coefficients_ == b.coefficients_;
}

QExpansion eisenstein_qexp(long k, long truncation) {
  if (k < 4 || k % 2 != 0) {
    throw std::invalid_argument("eisenstein_qexp: weight must be even and >= 4, got " +
                                std::to_string(k));
  }
  if (truncation < 0) throw std::invalid_argument("eisenstein_qexp: negative truncation");
  const BigRational scale = -BigRational(2 * k) / bernoulli(k);
  std::vector<BigRational> c;
  c.reserve(static_cast<std::size_t>(truncation + 1));
  c.emplace_back(1);
  for (long n = 1; n <= truncation; ++n) {
    c.push_back(scale * BigRational(divisor_sigma(n, static_cast<unsigned long>(k - 1))));
  }
  return QExpansion(std::move(c), 2 * k);
}

QExpansion delta_qexp(long truncation) {
  if (truncation < 0) throw std::invalid_argument("delta_qexp: negative truncation");
  // g = prod (1 - q^n) is sparse (pentagonal numbers); f = g^24 up to
  // q^(L-1) by the power recurrence n f_n = sum_{j>=1} (25 j - n) g_j f_{n-j}.
  // Then shift by q.
  std::vector<std::pair<long, int>> g;  // (j, g_j), g_j != 0, j >= 1, ascending
  for (long k = 1;; ++k) {
    const long a = k * (3 * k - 1) / 2;
    if (a >= truncation) break;
    const int sign = k % 2 ? -1 : 1;
    g.emplace_back(a, sign);
    const long b = k * (3 * k + 1) / 2;
    if (b < truncation) g.emplace_back(b, sign);
  }
  std::vector<BigInt> eta(static_cast<std::size_t>(truncation), BigInt(0));
  if (truncation > 0) eta[0] = 1;
  for (long n = 1; n < truncation; ++n) {
    BigInt acc(0);
    for (const auto& [j, gj] : g) {
      if (j > n) break;
      acc += BigInt((25 * j - n) * gj) * eta[static_cast<std::size_t>(n - j)];
    }
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    eta[static_cast<std::size_t>(n)] = acc;
  }
  std::vector<BigRational> c;
  c.reserve(static_cast<std::size_t>(truncation + 1));
  c.emplace_back(0);
  for (const auto& e : eta) c.emplace_back(e);
  return QExpansion(std::move(c), 24);
}

BigRational hecke_tl_coefficient(const CoefficientAccessor& a, long n, long l, long k) {
  BigRational out = a(l * n);
  if (n % l == 0) out += power(BigRational(l), k - 1) * a(n / l);
  return out;
}

BigRational hecke_tl2_half_coefficient(const CoefficientAccessor& a, long n, long l,
                                       long weight_times_two) {
  const long l2 = l * l;
  BigRational out = a(l2 * n);
  // (-1)^{k - 1/2} = (-1)^{(w-1)/2}
  const long sign = ((weight_times_two - 1) / 2) % 2 == 0 ? 1 : -1;
  const int symbol = legendre(BigInt(sign * n), l);
  if (symbol != 0) {
    out += BigRational(symbol) * power(BigRational(l), (weight_times_two - 3) / 2) * a(n);
  }
  if (n % l2 == 0) out += power(BigRational(l), weight_times_two - 2) * a(n / l2);
  return out;
}

namespace {

void require_hecke_prime(const QExpansion& f, long l) {
  if (!is_prime(l)) throw std::invalid_argument("Hecke operator: l = " + std::to_string(l) +
                                                " is not prime");
  if (l % f.level() != 1 % f.level()) {
    throw std::invalid_argument("Hecke operator: need l = 1 mod N (l = " + std::to_string(l) +
                                ", N = " + std::to_string(f.level()) + ")");
  }
}

QExpansion finish(std::vector<BigRational> c, const QExpansion& f) {
  QExpansion out(std::move(c), f.weight_times_two(), f.level());
  if (f.modulus()) return out.reduce(*f.modulus());
  return out;
}

}  // namespace

QExpansion hecke_tl(const QExpansion& f, long l) {
  if (f.half_integral_weight()) {
    throw std::invalid_argument("hecke_tl: integral weight required");
  }
  require_hecke_prime(f, l);
  const long out_l = f.truncation() / l;
  const long k = f.weight_times_two() / 2;
  const CoefficientAccessor a = [&f](long n) { return f[n]; };
  std::vector<BigRational> c;
  c.reserve(static_cast<std::size_t>(out_l + 1));
  for (long n = 0; n <= out_l; ++n) c.push_back(hecke_tl_coefficient(a, n, l, k));
  return finish(std::move(c), f);
}

QExpansion hecke_tl2_half(const QExpansion& f, long l) {
  if (!f.half_integral_weight()) {
    throw std::invalid_argument("hecke_tl2_half: half-integral weight required");
  }
  if (l == 2) throw std::invalid_argument("hecke_tl2_half: l must be odd");
  require_hecke_prime(f, l);
  const long out_l = f.truncation() / (l * l);
  const CoefficientAccessor a = [&f](long n) { return f[n]; };
  std::vector<BigRational> c;
  c.reserve(static_cast<std::size_t>(out_l + 1));
  for (long n = 0; n <= out_l; ++n) {
    c.push_back(hecke_tl2_half_coefficient(a, n, l, f.weight_times_two()));
  }
  return finish(std::move(c), f);
}

long sturm_bound(long weight_times_two, long index) {
  if (weight_times_two <= 0) throw std::invalid_argument("sturm_bound: weight must be positive");
  if (index <= 0) throw std::invalid_argument("sturm_bound: index must be positive");
  const long w = weight_times_two % 2 == 0 ? weight_times_two : weight_times_two + 1;
  // floor((w/2) / 12 * index)
  return w * index / 24;
}

}  // namespace singmod::qseries
