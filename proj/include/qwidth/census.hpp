#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qwidth/matrix.hpp"

namespace qwidth {

/// Order of SL_n(Z/m) from the closed form m^(n^2-1) prod_{p | m} prod_{k=2..n} (1 - p^-k).
mpz_class sl_order(std::size_t n, const mpz_class& m);

/// A finite matrix group over Z/m, elements stored as residue arrays and
/// indexed by their serialized bytes. Products go through a full
/// multiplication table for small groups and through hash lookups otherwise.
class FiniteGroupTable {
 public:
  /// Closure of `generators` under multiplication. All generators must be
  /// invertible n x n matrices over the same Z/m.
  static FiniteGroupTable generated_by(const std::vector<SqMatrix>& generators, std::uint64_t budget);

  std::size_t order() const { return order_; }
  std::size_t dim() const { return n_; }
  const RingSpec& ring() const { return ring_; }
  std::uint32_t modulus() const { return m_; }

  SqMatrix element(std::size_t k) const;
  /// Residues of element k, row-major, n*n entries in [0, m).
  const std::uint32_t* raw(std::size_t k) const { return entries_.data() + k * n_ * n_; }
  std::optional<std::size_t> index_of(const SqMatrix& g) const;
  std::optional<std::size_t> index_of_raw(const std::uint32_t* entries) const;

  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t conjugate(std::size_t g, std::size_t s) const { return mul(mul(s, g), inverse_[s]); }
  std::size_t commutator(std::size_t g, std::size_t h) const {
    return mul(mul(g, h), mul(inverse_[g], inverse_[h]));
  }

  bool is_central(std::size_t k) const { return central_[k]; }
  const std::vector<std::size_t>& center() const { return center_; }

  /// g = I mod the ideal of Z/m generated by `ideal_gen`.
  bool in_congruence(std::size_t k, std::uint32_t ideal_gen) const;
  /// g = I + x e_ij with x a multiple of `ideal_gen`; the identity counts.
  bool in_root(std::size_t k, std::size_t i, std::size_t j, std::uint32_t ideal_gen) const;

  /// Indices of the subgroup generated by the given elements.
  std::vector<std::size_t> subgroup(const std::vector<std::size_t>& gens) const;

 private:
  FiniteGroupTable() = default;
  std::string key_of(const std::uint32_t* entries) const;
  void finish(std::uint64_t budget);

  RingSpec ring_ = RingSpec::integers();
  std::size_t n_ = 0;
  std::uint32_t m_ = 0;
  std::size_t order_ = 0;
  std::vector<std::uint32_t> entries_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint32_t> table_;  // empty when products use hashing
  std::vector<std::uint32_t> inverse_;
  std::vector<bool> central_;
  std::vector<std::size_t> center_;
  std::size_t identity_ = 0;
};

/// Groups up to this order get a multiplication table.
inline constexpr std::size_t kTableLimit = 2500;

/// SL_n(ring) for ring = Z/m, generated by the elementary matrices I + e_ij.
/// The element count is checked against sl_order. Throws BudgetExceeded when
/// the closed-form order exceeds `budget` and UnsupportedRing for infinite rings.
FiniteGroupTable enumerate_sl(std::size_t n, const RingSpec& ring, std::uint64_t budget = 1'000'000);

/// "SL<n>,<ring>" with ring "Z/m" or "F<p>" (p prime, same as Z/p).
std::pair<std::size_t, RingSpec> parse_group_descriptor(std::string_view descriptor);

/// Which group supplies the elements s of a q-operation.
enum class ConjugatorGroup { Elementary, Congruence };

struct WidthTarget {
  std::size_t i;
  std::size_t j;
  unsigned min_ops;
  unsigned min_len;
};

struct WidthResult {
  std::size_t sigma;
  std::vector<WidthTarget> targets;
};

/// Breadth-first width search in a fixed group for a fixed ideal (qz)/(m).
class WidthOracle {
 public:
  WidthOracle(const FiniteGroupTable& table, const Ideal& q, ConjugatorGroup group = ConjugatorGroup::Elementary);

  /// Minimal q-operation count and minimal word length in conjugates of
  /// sigma^{+-1} reaching a nontrivial element of each E_ij(q).
  /// Throws CentralInput, and Unreachable when some target cannot be reached.
  WidthResult run(std::size_t sigma, const std::vector<std::pair<std::size_t, std::size_t>>& targets) const;

  const std::vector<std::size_t>& conjugators() const { return conjugators_; }
  std::uint32_t ideal_generator() const { return gen_; }

 private:
  const FiniteGroupTable& table_;
  std::uint32_t gen_;
  std::vector<std::size_t> conjugators_;
};

WidthResult width_bfs(const FiniteGroupTable& table, std::size_t sigma,
                      const std::vector<std::pair<std::size_t, std::size_t>>& targets, const Ideal& q,
                      ConjugatorGroup group = ConjugatorGroup::Elementary);

/// All off-diagonal positions (i, j) of an n x n matrix.
std::vector<std::pair<std::size_t, std::size_t>> all_targets(std::size_t n);

struct WidthCensus {
  std::vector<WidthResult> rows;  // non-central sigma in index order
  std::size_t skipped_central = 0;
  std::vector<std::size_t> unreachable;  // sigma with some target out of reach
  unsigned max_ops = 0;
  unsigned max_len = 0;
  mpq_class mean_ops;
  mpq_class mean_len;

  /// "sigma_index,min_ops,min_len,target" rows, target written "i:j",
  /// followed by a summary block.
  std::string to_csv() const;
};

WidthCensus width_census(const FiniteGroupTable& table, const Ideal& q,
                         ConjugatorGroup group = ConjugatorGroup::Elementary);

struct SumSetLevel {
  unsigned l;
  std::uint64_t exact;       // |S_l|, sums of exactly l elements
  std::uint64_t cumulative;  // sums of at most l elements
  std::uint64_t target_covered;
  std::uint64_t scalar_covered;
};

struct SumSetReport {
  std::uint32_t modulus;
  std::uint32_t level;          // target is {g in SL_n(Z/m) : g = I mod level}
  std::uint64_t group_order;    // |Gamma mod m|
  std::uint64_t target_size;
  std::uint64_t scalar_size;    // scalar matrices in the target
  std::vector<SumSetLevel> levels;
  std::optional<unsigned> covered_at;

  std::string to_text() const;
};

/// Sums of at most M elements of the subgroup generated by gens mod m.
/// Throws BudgetExceeded when m^(n^2) exceeds `cell_budget`.
SumSetReport sum_set_census(const std::vector<SqMatrix>& gens, std::uint32_t m, unsigned M, std::uint32_t level,
                            std::uint64_t cell_budget = 100'000'000);

struct SumIdentityResult {
  bool holds;
  SqMatrix lhs;
  SqMatrix rhs;
  std::vector<SqMatrix> terms;  // the five summands, the first being (2m^2 - 3) I
};

/// [[1 + m^2 a, m b], [m c, 1 + m^2 d]] against its five-term decomposition.
SumIdentityResult verify_sum_identity(const mpz_class& m, const mpz_class& a, const mpz_class& b,
                                      const mpz_class& c, const mpz_class& d);

/// The same identity over Z[m, a, b, c, d]; returns entrywise differences
/// LHS - RHS as polynomial strings (all "0" when the identity holds).
std::vector<std::string> sum_identity_symbolic_difference();

}  // namespace qwidth
