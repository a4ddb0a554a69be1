#include "qwidth/matrix.hpp"

#include <sstream>

namespace qwidth {

SqMatrix::SqMatrix(RingSpec ring, std::size_t n) : ring_(std::move(ring)), n_(n) {
  if (n < 2) throw Error(ErrorKind::DimensionMismatch, "matrix dimension must be >= 2");
  e_.assign(n * n, RingElement(ring_));
}

SqMatrix SqMatrix::identity(const RingSpec& ring, std::size_t n) {
  SqMatrix m(ring, n);
  const RingElement one = RingElement::from_integer(ring, 1);
  for (std::size_t i = 1; i <= n; ++i) m.at(i, i) = one;
  return m;
}

SqMatrix SqMatrix::from_rows(const RingSpec& ring, const std::vector<std::vector<RingElement>>& rows) {
  SqMatrix m(ring, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(i + 1) + " has wrong length");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!(rows[i][j].ring() == ring)) throw Error(ErrorKind::MismatchedRings, "entry outside matrix ring");
      m.at(i + 1, j + 1) = rows[i][j];
    }
  }
  return m;
}

SqMatrix SqMatrix::from_integers(const RingSpec& ring,
                                 std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<RingElement>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().push_back(RingElement::from_integer(ring, v));
  }
  return from_rows(ring, r);
}

SqMatrix SqMatrix::diagonal(std::span<const RingElement> diag) {
  SqMatrix m(diag.front().ring(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.at(i + 1, i + 1) = diag[i];
  return m;
}

std::vector<RingElement> SqMatrix::row(std::size_t i) const {
  return {e_.begin() + static_cast<long>((i - 1) * n_), e_.begin() + static_cast<long>(i * n_)};
}

std::vector<RingElement> SqMatrix::column(std::size_t j) const {
  std::vector<RingElement> c;
  c.reserve(n_);
  for (std::size_t i = 1; i <= n_; ++i) c.push_back((*this)(i, j));
  return c;
}

bool SqMatrix::is_identity() const {
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= n_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

bool SqMatrix::is_scalar() const {
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= n_; ++j)
      if (i == j ? !((*this)(i, j) == (*this)(1, 1)) : !(*this)(i, j).is_zero()) return false;
  return true;
}

std::string SqMatrix::to_text() const {
  std::string out = std::to_string(n_) + " " + ring_.descriptor() + "\n";
  for (std::size_t i = 1; i <= n_; ++i) {
    for (std::size_t j = 1; j <= n_; ++j) {
      if (j > 1) out += ' ';
      out += (*this)(i, j).to_string();
    }
    out += '\n';
  }
  return out;
}

SqMatrix SqMatrix::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t n = 0;
  std::string desc;
  if (!(in >> n >> desc)) throw Error(ErrorKind::ParseError, "matrix header must be '<n> <ring>'");
  const RingSpec ring = RingSpec::parse(desc);
  if (n < 2) throw Error(ErrorKind::DimensionMismatch, "matrix dimension must be >= 2");
  SqMatrix m(ring, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw Error(ErrorKind::ParseError, "matrix has fewer than n*n entries");
      m.at(i, j) = RingElement::parse(ring, tok);
    }
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::ParseError, "trailing data after matrix: '" + extra + "'");
  return m;
}

std::string SqMatrix::key() const {
  std::string out;
  for (const auto& e : e_) {
    out += e.to_string();
    out += ' ';
  }
  return out;
}

SqMatrix operator*(const SqMatrix& a, const SqMatrix& b) {
  if (!(a.ring_ == b.ring_)) throw Error(ErrorKind::MismatchedRings, "matrix product across rings");
  if (a.n_ != b.n_) throw Error(ErrorKind::DimensionMismatch, "matrix product of different sizes");
  const std::size_t n = a.n_;
  SqMatrix c(a.ring_, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= n; ++k) {
      const RingElement& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 1; j <= n; ++j)
        if (!b(k, j).is_zero()) c.at(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const SqMatrix& a, const SqMatrix& b) {
  return a.n_ == b.n_ && a.ring_ == b.ring_ && a.e_ == b.e_;
}

SqMatrix mat_mul(const SqMatrix& a, const SqMatrix& b) { return a * b; }

namespace {


RingElement cofactor_det(const std::vector<std::vector<RingElement>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RingElement acc(m[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<RingElement>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      sub.emplace_back();
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) sub.back().push_back(m[i][k]);
    }
    const RingElement term = m[0][j] * cofactor_det(sub);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

RingElement bareiss_det(std::vector<std::vector<RingElement>> m) {
  const std::size_t n = m.size();
  const RingSpec ring = m[0][0].ring();
  RingElement prev = RingElement::from_integer(ring, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return RingElement(ring);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        auto q = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        if (!q) throw Error(ErrorKind::InternalError, "Bareiss division failed");
        m[i][j] = *q;
      }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

std::vector<std::vector<RingElement>> as_rows(const SqMatrix& a) {
  std::vector<std::vector<RingElement>> rows;
  for (std::size_t i = 1; i <= a.dim(); ++i) rows.push_back(a.row(i));
  return rows;
}

RingElement det_rows(const std::vector<std::vector<RingElement>>& rows, const RingSpec& ring) {
  if (rows.size() <= 4 || !ring.is_domain()) return cofactor_det(rows);
  return bareiss_det(rows);
}

}  // namespace

RingElement determinant(const SqMatrix& a) { return det_rows(as_rows(a), a.ring()); }

SqMatrix mat_inv(const SqMatrix& a) {
  const auto det_inv = unit_check(determinant(a));
  if (!det_inv) throw Error(ErrorKind::NotInvertible, "determinant is not a unit");
  const std::size_t n = a.dim();
  const auto rows = as_rows(a);
  SqMatrix inv(a.ring(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // adj(i, j) = (-1)^(i+j) det(a without row j, column i)
      std::vector<std::vector<RingElement>> sub;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        sub.emplace_back();
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) sub.back().push_back(rows[r][c]);
      }
      RingElement cof = sub.size() == 1 ? sub[0][0] : det_rows(sub, a.ring());
      if ((i + j) % 2) cof = -cof;
      inv.at(i + 1, j + 1) = cof * *det_inv;
    }
  return inv;
}

SqMatrix elementary(std::size_t i, std::size_t j, const RingElement& a, std::size_t n) {
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw Error(ErrorKind::BadIndices,
                "elementary(" + std::to_string(i) + "," + std::to_string(j) + ") in dimension " + std::to_string(n));
  SqMatrix m = SqMatrix::identity(a.ring(), n);
  m.at(i, j) = a;
  return m;
}

SqMatrix commutator(const SqMatrix& g, const SqMatrix& h) { return g * h * mat_inv(g) * mat_inv(h); }

SqMatrix conjugate(const SqMatrix& g, const SqMatrix& s) { return s * g * mat_inv(s); }

SqMatrix outer(std::span<const RingElement> column, std::span<const RingElement> row) {
  if (column.size() != row.size()) throw Error(ErrorKind::DimensionMismatch, "outer product sizes differ");
  SqMatrix m(column.front().ring(), column.size());
  for (std::size_t i = 0; i < column.size(); ++i)
    for (std::size_t j = 0; j < row.size(); ++j) m.at(i + 1, j + 1) = column[i] * row[j];
  return m;
}

namespace {

bool difference_in(const SqMatrix& g, const Ideal& q) {
  for (std::size_t i = 1; i <= g.dim(); ++i)
    for (std::size_t j = 1; j <= g.dim(); ++j) {
      const RingElement d = i == j ? g(i, j) - RingElement::from_integer(g.ring(), 1) : g(i, j);
      if (!q.contains(d)) return false;
    }
  return true;
}

}  // namespace

bool is_congruent_to_identity(const SqMatrix& g, const Ideal& q) {
  if (!(g.ring() == q.ring())) throw Error(ErrorKind::MismatchedRings, "ideal and matrix rings differ");
  return difference_in(g, q);
}

CongruenceDatum congruence_level(const SqMatrix& g, const Ideal& ideal, unsigned cap) {
  if (!(g.ring() == ideal.ring())) throw Error(ErrorKind::MismatchedRings, "ideal and matrix rings differ");
  if (ideal.is_zero()) throw Error(ErrorKind::ZeroIdeal, "congruence level against the zero ideal");
  if (cap < 1) throw Error(ErrorKind::UsageError, "level cap must be >= 1");
  if (g.is_identity()) return {ideal, LevelKind::Identity, cap};
  Ideal power = ideal;
  for (unsigned i = 1; i <= cap; ++i) {
    if (!difference_in(g, power)) return {ideal, LevelKind::Finite, i - 1};
    if (i < cap) power = ideal.power(i + 1);
  }
  return {ideal, LevelKind::CapExceeded, cap};
}

bool is_central(const SqMatrix& g) { return g.is_scalar(); }

bool commutes_with_elementaries(const SqMatrix& g) {
  const RingElement one = RingElement::from_integer(g.ring(), 1);
  for (std::size_t i = 1; i <= g.dim(); ++i)
    for (std::size_t j = 1; j <= g.dim(); ++j) {
      if (i == j) continue;
      const SqMatrix e = elementary(i, j, one, g.dim());
      if (!(g * e == e * g)) return false;
    }
  return true;
}

SqMatrix embed_affine(const SqMatrix& gamma, std::span<const RingElement> v, EmbedSide side, std::size_t n) {
  if (gamma.dim() + 1 != n || v.size() + 1 != n)
    throw Error(ErrorKind::DimensionMismatch, "embed_affine needs an (n-1)-block and n-1 vector entries");
  SqMatrix m = SqMatrix::identity(gamma.ring(), n);
  const std::size_t off = side == EmbedSide::Column ? 0 : 1;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) m.at(i + off, j + off) = gamma(i, j);
  for (std::size_t k = 1; k < n; ++k) {
    if (side == EmbedSide::Column)
      m.at(k, n) = v[k - 1];
    else
      m.at(1, k + 1) = v[k - 1];
  }
  return m;
}

}  // namespace qwidth
