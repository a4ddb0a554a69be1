#pragma once

#include <random>

#include "qwidth/matrix.hpp"

namespace qwidth::testing {

inline RingElement z(long v) { return RingElement::from_integer(RingSpec::integers(), v); }

inline RingElement elt(const RingSpec& r, long v) { return RingElement::from_integer(r, v); }

/// Product of `count` random elementary matrices whose entries are
/// multiples of `step` in [-bound*step, bound*step].
inline SqMatrix random_elementary_product(std::mt19937_64& rng, const RingSpec& ring, std::size_t n,
                                          int count, long step = 1, long bound = 3) {
  std::uniform_int_distribution<std::size_t> idx(1, n);
  std::uniform_int_distribution<long> val(-bound, bound);
  SqMatrix g = SqMatrix::identity(ring, n);
  for (int k = 0; k < count; ++k) {
    std::size_t i = idx(rng), j = idx(rng);
    while (j == i) j = idx(rng);
    g = g * elementary(i, j, elt(ring, step * val(rng)), n);
  }
  return g;
}

}  // namespace qwidth::testing
