#pragma once

#include <map>
#include <utility>
#include <vector>

#include "singmod/lattice.hpp"

namespace singmod::jacobi {

// Fourier coefficients c(n, r) of a degree-1 Jacobi form of scalar index m,
// for 0 <= n <= n_max and r^2 <= 4nm.
struct JacobiTable {
  long index = 1;
  long weight_times_two = 0;
  long n_max = 0;
  std::map<std::pair<long, long>, BigInt> entries;

  friend bool operator==(const JacobiTable&, const JacobiTable&) = default;
};

// Index-m Fourier-Jacobi coefficient of the degree-2 theta series of G:
// c(n, r) = #{(x, y) : G[x] = 2n, G[y] = 2m, x^T G y = r}.
JacobiTable fj_coefficient_table(const lattice::GramMatrix& g, long m, long n_max);

struct JClass {
  long disc = 0;     // 4nm - r^2
  long residue = 0;  // min(r mod 2m, -r mod 2m)
  friend bool operator==(const JClass&, const JClass&) = default;
  friend auto operator<=>(const JClass&, const JClass&) = default;
};

// Complete invariant of (n, r) under r -> +-(r + 2m lambda).
JClass j_class(long n, long r, long m);

struct ThetaTerm {
  long exponent = 0;  // 4mn - r^2
  BigInt coefficient;
  friend bool operator==(const ThetaTerm&, const ThetaTerm&) = default;
};

// h_mu for each residue mu mod 2m, as its 4m-scaled exponents with
// coefficients, ascending. For weight divisible by 4 (even integral k) mu and
// -mu are identified and only 0 <= mu <= m appear; otherwise mu runs over
// 0..2m-1. Each exponent is listed once: entries of the table in the same
// class must agree, else std::invalid_argument.
std::map<long, std::vector<ThetaTerm>> theta_decompose(const JacobiTable& table);

// Whether (p-1) p^{m-1} divides 2k - r. When false, a Jacobi form of that
// weight and index rank r that is nonzero mod p^m on only finitely many
// classes vanishes mod p^m.
bool jacobi_escape_possible(long weight_times_two, long index_rank, long p, long m);

}  // namespace singmod::jacobi
