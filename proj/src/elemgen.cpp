#include "qwidth/elemgen.hpp"

#include <algorithm>

#include "qwidth/census.hpp"

namespace qwidth {

SqMatrix multiply_factors(const std::vector<ElemFactor>& factors, const RingSpec& ring, std::size_t n) {
  SqMatrix g = SqMatrix::identity(ring, n);
  for (const auto& f : factors) g = g * elementary(f.i, f.j, f.a, n);
  return g;
}

std::vector<ElemFactor> inverse_factors(const std::vector<ElemFactor>& factors) {
  std::vector<ElemFactor> inv;
  inv.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) inv.push_back({it->i, it->j, -it->a});
  return inv;
}

namespace {

// Working matrix plus the log of left multiplications applied to it.
class RowReducer {
 public:
  explicit RowReducer(const SqMatrix& g) : w_(g), n_(g.dim()) {}

  // row_r += a * row_s
  void add_row(std::size_t r, std::size_t s, const RingElement& a) {
    if (a.is_zero()) return;
    for (std::size_t k = 1; k <= n_; ++k)
      if (!w_(s, k).is_zero()) w_.at(r, k) += a * w_(s, k);
    ops_.push_back({r, s, a});
  }

  const RingElement& operator()(std::size_t i, std::size_t j) const { return w_(i, j); }
  const SqMatrix& matrix() const { return w_; }

  // E_k ... E_1 g = W = I gives g = E_1^-1 ... E_k^-1.
  std::vector<ElemFactor> factors_of_input() const {
    std::vector<ElemFactor> out;
    out.reserve(ops_.size());
    for (const auto& op : ops_) out.push_back({op.i, op.j, -op.a});
    return out;
  }

 private:
  SqMatrix w_;
  std::size_t n_;
  std::vector<ElemFactor> ops_;
};

void reduce_column(RowReducer& red, std::size_t c, std::size_t n) {
  const RingSpec& ring = red.matrix().ring();
  std::size_t piv = 0;
  while (true) {
    piv = 0;
    mpz_class best;
    std::size_t nonzero = 0;
    for (std::size_t r = c; r <= n; ++r) {
      if (red(r, c).is_zero()) continue;
      ++nonzero;
      const mpz_class size = euclidean_size(red(r, c));
      if (piv == 0 || size < best) {
        piv = r;
        best = size;
      }
    }
    if (piv == 0) throw Error(ErrorKind::NotSL, "zero column during reduction");
    if (nonzero == 1) break;
    for (std::size_t r = c; r <= n; ++r) {
      if (r == piv || red(r, c).is_zero()) continue;
      const auto [quo, rem] = euclidean_divmod(red(r, c), red(piv, c));
      red.add_row(r, piv, -quo);
    }
  }
  if (piv != c) {
    red.add_row(c, piv, RingElement::from_integer(ring, 1));
    red.add_row(piv, c, RingElement::from_integer(ring, -1));
  }
  const RingElement d = red(c, c);
  if (d.is_one()) return;
  const auto d_inv = unit_check(d);
  if (!d_inv) throw Error(ErrorKind::InternalError, "pivot " + d.to_string() + " is not a unit");
  // Turn the unit pivot into 1 through the next row, which is zero in column c.
  const RingElement one = RingElement::from_integer(ring, 1);
  const std::size_t r = c + 1;
  red.add_row(r, c, (one - d) * *d_inv);
  red.add_row(c, r, one);
  red.add_row(r, c, d - one);
}

}  // namespace

ElemFactorization decompose_elementary(const SqMatrix& g) {
  const RingSpec& ring = g.ring();
  if (ring.kind() == RingKind::LocalizedIntegers)
    throw Error(ErrorKind::UnsupportedRing, "elementary decomposition over " + ring.descriptor());
  if (!determinant(g).is_one()) throw Error(ErrorKind::NotSL, "determinant is not 1");
  const std::size_t n = g.dim();
  RowReducer red(g);
  for (std::size_t c = 1; c < n; ++c) reduce_column(red, c, n);
  if (!red(n, n).is_one()) throw Error(ErrorKind::InternalError, "last pivot is not 1");
  for (std::size_t c = n; c >= 2; --c)
    for (std::size_t r = 1; r < c; ++r)
      if (!red(r, c).is_zero()) red.add_row(r, c, -red(r, c));
  if (!red.matrix().is_identity()) throw Error(ErrorKind::InternalError, "row reduction did not reach I");
  return {red.factors_of_input(), g};
}

std::string FactorCountCensus::to_csv() const {
  std::string out = "count,frequency\n";
  for (const auto& [count, freq] : histogram) out += std::to_string(count) + "," + std::to_string(freq) + "\n";
  out += "max=" + std::to_string(max_count) + " order=" + std::to_string(order) + "\n";
  return out;
}

FactorCountCensus factor_count_census(std::size_t n, const RingSpec& ring, std::uint64_t budget) {
  const FiniteGroupTable table = enumerate_sl(n, ring, budget);
  FactorCountCensus census;
  census.order = table.order();
  for (std::size_t k = 0; k < table.order(); ++k) {
    const std::size_t count = decompose_elementary(table.element(k)).count();
    ++census.histogram[count];
    census.max_count = std::max(census.max_count, count);
  }
  return census;
}

}  // namespace qwidth
