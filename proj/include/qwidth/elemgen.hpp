#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qwidth/matrix.hpp"

namespace qwidth {

struct ElemFactor {
  std::size_t i;
  std::size_t j;
  RingElement a;

  friend bool operator==(const ElemFactor&, const ElemFactor&) = default;
};

/// target == elementary(f0) * elementary(f1) * ... in list order.
struct ElemFactorization {
  std::vector<ElemFactor> factors;
  SqMatrix target;

  std::size_t count() const { return factors.size(); }
};

/// Ordered product of the factors; `ring` and `n` are needed for the empty list.
SqMatrix multiply_factors(const std::vector<ElemFactor>& factors, const RingSpec& ring, std::size_t n);

/// Factorization of the inverse: reversed list with negated entries.
std::vector<ElemFactor> inverse_factors(const std::vector<ElemFactor>& factors);

/// Euclidean row reduction to the identity, recorded as elementary factors.
/// Supports Z, F_p[x] and Z/m (division on lifts in [0, m)); throws NotSL
/// when det != 1 and UnsupportedRing for Z[1/p].
ElemFactorization decompose_elementary(const SqMatrix& g);

struct FactorCountCensus {
  std::map<std::size_t, std::uint64_t> histogram;  // count -> frequency
  std::size_t max_count = 0;
  std::uint64_t order = 0;

  /// "count,frequency" rows followed by "max=<k> order=<N>".
  std::string to_csv() const;
};

inline constexpr std::uint64_t kDefaultGroupBudget = 1'000'000;

/// Decomposition length for every element of SL_n(ring), ring finite.
FactorCountCensus factor_count_census(std::size_t n, const RingSpec& ring,
                                      std::uint64_t budget = kDefaultGroupBudget);

}  // namespace qwidth
