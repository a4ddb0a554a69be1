#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwidth/ring.hpp"

namespace qwidth {

/// Exact n x n matrix over a RingSpec, n >= 2. Indices are 1-based.
class SqMatrix {
 public:
  SqMatrix(RingSpec ring, std::size_t n);  // zero matrix

  static SqMatrix identity(const RingSpec& ring, std::size_t n);
  static SqMatrix from_rows(const RingSpec& ring, const std::vector<std::vector<RingElement>>& rows);
  static SqMatrix from_integers(const RingSpec& ring,
                                std::initializer_list<std::initializer_list<long>> rows);
  static SqMatrix diagonal(std::span<const RingElement> diag);

  std::size_t dim() const { return n_; }
  const RingSpec& ring() const { return ring_; }

  const RingElement& operator()(std::size_t i, std::size_t j) const { return e_[(i - 1) * n_ + (j - 1)]; }
  RingElement& at(std::size_t i, std::size_t j) { return e_[(i - 1) * n_ + (j - 1)]; }

  std::vector<RingElement> row(std::size_t i) const;
  std::vector<RingElement> column(std::size_t j) const;

  bool is_identity() const;
  /// lambda * I for some lambda.
  bool is_scalar() const;

  /// Text format: "<n> <ring-descriptor>" then n lines of n elements.
  std::string to_text() const;
  static SqMatrix parse_text(std::string_view text);
  /// Canonical single-line key; equal keys iff equal matrices.
  std::string key() const;

  friend SqMatrix operator*(const SqMatrix& a, const SqMatrix& b);
  friend bool operator==(const SqMatrix& a, const SqMatrix& b);

 private:
  RingSpec ring_;
  std::size_t n_;
  std::vector<RingElement> e_;
};

SqMatrix mat_mul(const SqMatrix& a, const SqMatrix& b);
/// Throws NotInvertible unless det(a) is a unit.
SqMatrix mat_inv(const SqMatrix& a);
/// Cofactor expansion for n <= 4 or non-domains, fraction-free Bareiss otherwise.
RingElement determinant(const SqMatrix& a);

/// I + a e_ij.
SqMatrix elementary(std::size_t i, std::size_t j, const RingElement& a, std::size_t n);
/// g h g^-1 h^-1.
SqMatrix commutator(const SqMatrix& g, const SqMatrix& h);
/// s g s^-1.
SqMatrix conjugate(const SqMatrix& g, const SqMatrix& s);

/// Outer product of a column and a row vector.
SqMatrix outer(std::span<const RingElement> column, std::span<const RingElement> row);

enum class LevelKind { Finite, Identity, CapExceeded };

struct CongruenceDatum {
  Ideal ideal;
  LevelKind kind;
  /// Largest i <= cap with g = I mod ideal^i (cap itself when CapExceeded).
  unsigned level;
};

inline constexpr unsigned kDefaultLevelCap = 64;

CongruenceDatum congruence_level(const SqMatrix& g, const Ideal& ideal, unsigned cap = kDefaultLevelCap);

/// g = I mod q, i.e. g lies in the principal congruence subgroup of level q
/// (determinant is not checked).
bool is_congruent_to_identity(const SqMatrix& g, const Ideal& q);

bool is_central(const SqMatrix& g);
/// The other characterization: g commutes with every elementary(i, j, 1).
bool commutes_with_elementaries(const SqMatrix& g);

enum class EmbedSide { Column, Row };

/// Column: [[gamma, v], [0, 1]] (the copy G1). Row: [[1, v^T], [0, gamma]] (G2).
SqMatrix embed_affine(const SqMatrix& gamma, std::span<const RingElement> v, EmbedSide side, std::size_t n);

}  // namespace qwidth
