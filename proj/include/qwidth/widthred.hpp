#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwidth/elemgen.hpp"
#include "qwidth/matrix.hpp"

namespace qwidth {

/// g -> s g s^-1, g -> [g, s], g -> [s, g].
enum class QOpKind { Conjugate, CommRight, CommLeft };

std::string_view to_string(QOpKind kind);
SqMatrix apply_qop(QOpKind kind, const SqMatrix& g, const SqMatrix& s);

/// Where the elements s of a trace live. Elementary: E(n, A, q), witnessed
/// by factor lists. Congruence: Gamma(q), checked entrywise.
enum class SGroup { Elementary, Congruence };

struct TraceStep {
  QOpKind kind;
  SqMatrix s;
  std::vector<ElemFactor> s_factors;  // empty for SGroup::Congruence
  SqMatrix result;
  std::uint64_t word_length;
  std::string tag;
};

struct ReductionTrace {
  SqMatrix input;
  Ideal ideal;
  std::optional<std::pair<std::size_t, std::size_t>> target;
  SGroup group = SGroup::Elementary;
  std::uint64_t seed = 0;
  std::vector<TraceStep> steps;

  const SqMatrix& output() const { return steps.empty() ? input : steps.back().result; }
  std::uint64_t word_length() const { return steps.empty() ? 1 : steps.back().word_length; }
  std::size_t count_tagged(std::string_view prefix) const;

  /// Appends a step computed from the current output; the ledger doubles on
  /// commutators.
  void push(QOpKind kind, SqMatrix s, std::vector<ElemFactor> factors, std::string tag);
  /// Appends the steps of a trace whose input is this trace's output.
  void append(const ReductionTrace& segment);

  std::string serialize() const;
  static ReductionTrace parse(std::string_view text);
};

/// Recomputes every step from the input. Throws ReplayMismatch
/// ("replay mismatch at step k") on the first step whose result, ledger or
/// membership witness disagrees.
void replay_trace(const ReductionTrace& trace);

/// g = I + x e_ij with x in q and x != 0.
bool is_nontrivial_root(const SqMatrix& g, std::size_t i, std::size_t j, const Ideal& q);

/// A letter (s, e) stands for s sigma^e s^-1.
struct WordLetter {
  SqMatrix s;
  int exponent;
};

std::vector<WordLetter> expand_trace_word(const ReductionTrace& trace);
SqMatrix evaluate_word(const std::vector<WordLetter>& word, const SqMatrix& sigma);

struct SRWitness {
  std::vector<RingElement> t;
  std::vector<RingElement> shifted;  // a_i + t_i a_n^2
  GcdResult certificate;             // gcd of shifted, a unit
};

inline constexpr std::size_t kSRSearchBound = 10'000;

/// Searches t in shells of growing size. Throws SearchExhausted after
/// `bound` candidates and NotSL when alpha itself is not unimodular.
SRWitness unimodular_square_shift(std::span<const RingElement> alpha, std::size_t bound = kSRSearchBound);

/// G1: [[gamma, v], [0, 1]]. G2: [[1, v^T], [0, gamma]].
enum class AffineCopy { G1, G2 };

struct AffineReduction {
  ReductionTrace trace;
  AffineCopy location;
};

/// Rings accepted by the reduction: Z, F_p[x], Z[1/p] and Z/p with p prime.
/// Throws UnsupportedRing, DimensionMismatch (n < 3), ZeroIdeal, NotSL,
/// NotCongruent and CentralInput.
AffineReduction reduce_to_affine(const SqMatrix& sigma, const Ideal& q, std::uint64_t seed = 0);

/// At most one commutator to [[I, *], [0, 1]] (from G1) or [[1, *], [0, I]] (from G2).
ReductionTrace strip_to_translation(const SqMatrix& g, AffineCopy location, const Ideal& q);

/// At most one commutator from a translation form to an elementary matrix.
ReductionTrace translation_to_elementary(const SqMatrix& g, const Ideal& q);

/// At most three commutators from I + r e_kl into E_ij(q). Throws TrivialInput
/// for g = I and BadIndices when g is not elementary.
ReductionTrace relocate_elementary(const SqMatrix& g, std::size_t i, std::size_t j, const Ideal& q);

/// All four stages; at most 9 steps and word length at most 512.
ReductionTrace reduce_full(const SqMatrix& sigma, const Ideal& q, std::size_t i, std::size_t j,
                           std::uint64_t seed = 0);

enum class Se4Side { E12, E21 };

/// Candidate units for the 2 x 2 unit trick, in search order.
std::vector<RingElement> se4_unit_candidates(const RingSpec& ring);

/// At most four conjugates of sigma^{+-1} by elements of Gamma(q) landing in
/// E12(q) \ {I} (or E21(q)). Throws NoUnitFound, CentralInput, NotCongruent.
ReductionTrace unit_trick_se4(const SqMatrix& sigma, const Ideal& q, Se4Side side);

}  // namespace qwidth
