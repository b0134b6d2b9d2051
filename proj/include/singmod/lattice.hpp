#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singmod/fourier.hpp"
#include "singmod/int_matrix.hpp"
#include "singmod/lambda.hpp"

namespace singmod::lattice {

using lambda::HalfIntegralMatrix;

// Gram matrix of an even positive definite lattice.
class GramMatrix {
 public:
  // Throws std::invalid_argument unless symmetric, even diagonal and
  // positive definite.
  explicit GramMatrix(IntMatrix entries);

  int rank() const { return entries_.rows(); }
  const IntMatrix& entries() const { return entries_; }
  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  IntMatrix entries_;
};

// Catalog: "E8" (Bourbaki numbering), "A1".."A7", "D4", "Z<m>" (G = 2 Id).
GramMatrix catalog_lattice(const std::string& name);
std::vector<std::string> catalog_names();

// Catalog name, or else a path to a Gram matrix in the matrix text format.
GramMatrix load_lattice(const std::string& name_or_path);

struct ShortVectors {
  std::map<std::int64_t, std::uint64_t> counts;  // norm -> count, nonzero counts only
  std::map<std::int64_t, std::vector<std::vector<std::int64_t>>> vectors;
};

// All x with G[x] <= max_norm, grouped by norm. Vectors are kept only when
// keep_vectors is set.
ShortVectors short_vectors(const GramMatrix& g, std::int64_t max_norm, bool keep_vectors = true);

// #{X in Z^{m x t} : X^T G X = 2T} for positive semidefinite T of degree t.
BigInt representation_number(const GramMatrix& g, const HalfIntegralMatrix& t);

// Counts representation numbers for many T against one lattice, reusing
// the short vectors. Thread-safe after construction.
class RepresentationCounter {
 public:
  RepresentationCounter(const GramMatrix& g, std::int64_t max_norm);
  BigInt count(const HalfIntegralMatrix& t) const;
  std::int64_t max_norm() const { return max_norm_; }

  struct Entry {
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> gx;  // G x, so <x, y> = gx . y
  };

 private:
  GramMatrix g_;
  std::int64_t max_norm_;
  std::map<std::int64_t, std::vector<Entry>> by_norm_;
};

// Theta series of G of degree n <= 3 on all classes of rank <= n with
// det(2T) <= det_doubled_max. Weight is rank(G) / 2.
fourier::FourierTable fourier_table(const GramMatrix& g, int degree, std::int64_t det_doubled_max);

struct LatticeAutomorphism {
  IntMatrix u;
  long order = 0;
};

// Checks U^T G U = G (else CodedError NOT_ISOMETRY) and that U has
// multiplicative order exactly p (else ORDER_MISMATCH).
LatticeAutomorphism verify_automorphism(const GramMatrix& g, const IntMatrix& u, long p);

// Product s_{i_1} s_{i_2} ... of the reflections in the norm-2 basis
// vectors e_i; s_i = I - e_i (row i of G).
IntMatrix coxeter_element(const GramMatrix& g, const std::vector<int>& indices);

// Characteristic polynomial of an integer matrix, coefficients from X^0 up
// to the monic leading term.
std::vector<BigInt> characteristic_polynomial(const IntMatrix& u);

struct AlphaBeta {
  long alpha = 0;  // multiplicity of X - 1
  long beta = 0;   // multiplicity of the p-th cyclotomic polynomial
};

// chi = (X - 1)^alpha Phi_p^beta; any other factor is CodedError
// UNEXPECTED_FACTOR.
AlphaBeta charpoly_alpha_beta(const LatticeAutomorphism& a, long p);

struct ScannedValue {
  HalfIntegralMatrix index;  // degree rank_bound key
  int rank = 0;
  BigInt value;
  bool divisible = false;  // p | value
};

struct ThetaPRank {
  int r_lower = 0;
  std::optional<HalfIntegralMatrix> witness;
  // vanishing_verified[r]: every scanned rank-r coefficient is divisible by p.
  std::vector<bool> vanishing_verified;
  std::vector<ScannedValue> certificate;
  // Weight congruence leaves r_lower as the only possible p-rank of the
  // degree-rank_bound theta series.
  bool certified = false;
  // False when vanishing was verified at r_lower + 1 yet (p-1) does not
  // divide 2k - r_lower: the bounded scan is inconclusive.
  bool congruence_consistent = true;
  // With an automorphism supplied: its alpha, and whether r_lower <= alpha
  // as the fixed-point-free divisibility demands.
  std::optional<long> alpha;
  std::optional<bool> alpha_consistent;
};

ThetaPRank theta_prank(const GramMatrix& g, long p, int rank_bound, std::int64_t det_doubled_max,
                       const std::optional<LatticeAutomorphism>& automorphism = std::nullopt);

}  // namespace singmod::lattice
