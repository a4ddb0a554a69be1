#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwidth/error.hpp"

namespace qwidth {

enum class RingKind { Integers, IntegersMod, PolyOverFiniteField, LocalizedIntegers };

/// A concrete commutative ring with unit: Z, Z/m, F_p[x] or Z[1/p].
///
/// Descriptor grammar (case-sensitive): "Z" | "Z/<m>" | "F<p>[x]" | "Z[1/<p>]".
/// The shared payload is immutable, so copies are cheap and thread-safe.
class RingSpec {
 public:
  static RingSpec integers();
  static RingSpec integers_mod(const mpz_class& modulus);
  static RingSpec poly_over_fp(const mpz_class& prime);
  static RingSpec localized(const mpz_class& prime);
  static RingSpec parse(std::string_view descriptor);

  RingSpec();  // Z

  std::string descriptor() const;
  RingKind kind() const { return d_->kind; }
  /// Modulus for Z/m, the prime for F_p[x] and Z[1/p], zero for Z.
  const mpz_class& parameter() const { return d_->param; }
  bool is_finite() const { return d_->kind == RingKind::IntegersMod; }
  /// Z, F_p[x], Z[1/p] and Z/p with p prime.
  bool is_domain() const;
  /// Number of elements; only meaningful when is_finite().
  const mpz_class& order() const { return d_->param; }

  friend bool operator==(const RingSpec& a, const RingSpec& b);

 private:
  struct Data {
    RingKind kind;
    mpz_class param;
    bool prime_param;
  };
  explicit RingSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// An element in canonical form; equality is structural.
///
/// Payload by ring: Z holds the integer; Z/m the residue in [0, m); F_p[x]
/// the ascending coefficient list with nonzero leading term; Z[1/p] the pair
/// (n, k) meaning n * p^k with p not dividing n (zero is (0, 0)).
class RingElement {
 public:
  explicit RingElement(RingSpec ring);  // zero

  /// Image of an integer under the structure map Z -> ring.
  static RingElement from_integer(const RingSpec& ring, const mpz_class& value);
  static RingElement from_integer(const RingSpec& ring, long value) {
    return from_integer(ring, mpz_class(value));
  }
  static RingElement from_coefficients(const RingSpec& ring, std::vector<mpz_class> coeffs);
  static RingElement from_localized(const RingSpec& ring, mpz_class numerator, long exponent);
  /// The indeterminate x of F_p[x].
  static RingElement indeterminate(const RingSpec& ring);
  static RingElement parse(const RingSpec& ring, std::string_view text);

  std::string to_string() const;

  const RingSpec& ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;

  /// Integer payload: the integer, the residue, or the p-free numerator.
  const mpz_class& value() const { return v_; }
  long exponent() const { return k_; }
  const std::vector<mpz_class>& coefficients() const { return c_; }
  /// Degree of a polynomial, -1 for zero.
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  RingElement operator-() const;
  RingElement pow(unsigned long e) const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }
  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  void normalize();

  RingSpec ring_;
  mpz_class v_;
  long k_ = 0;
  std::vector<mpz_class> c_;
};

enum class ArithOp { Add, Sub, Mul };

/// Checked binary arithmetic; throws MismatchedRings when parents differ.
RingElement ring_arith(const RingElement& a, const RingElement& b, ArithOp op);

struct GcdResult {
  RingElement g;
  std::vector<RingElement> coeffs;
};

/// Bezout witness: g = sum coeffs[i] * elems[i], and g generates the ideal
/// spanned by elems. g is normalized to the canonical associate (nonnegative
/// integer, monic polynomial, divisor of m for Z/m, p-free for Z[1/p]).
GcdResult extended_gcd(std::span<const RingElement> elems);

/// Inverse when e is a unit.
std::optional<RingElement> unit_check(const RingElement& e);

/// Some x with den * x == num, if one exists.
std::optional<RingElement> divide_exact(const RingElement& num, const RingElement& den);

/// Size used by Euclidean reduction: |n| on Z, the lifted residue on Z/m,
/// degree + 1 on F_p[x] (0 for zero). Z[1/p] is unsupported.
mpz_class euclidean_size(const RingElement& e);

/// Quotient and remainder with euclidean_size(rem) < euclidean_size(den).
/// Over Z/m the division is performed on lifts in [0, m).
std::pair<RingElement, RingElement> euclidean_divmod(const RingElement& num,
                                                     const RingElement& den);

/// Coordinates generate the unit ideal.
bool is_unimodular(std::span<const RingElement> v);

/// Finitely generated ideal with a cached canonical generator; every
/// supported ring is a principal ideal ring.
class Ideal {
 public:
  Ideal(RingSpec ring, std::vector<RingElement> generators);
  static Ideal principal(const RingElement& g);
  static Ideal unit(const RingSpec& ring);
  /// Parses ';'-separated element strings.
  static Ideal parse(const RingSpec& ring, std::string_view text);

  const RingSpec& ring() const { return ring_; }
  const std::vector<RingElement>& generators() const { return gens_; }
  const RingElement& generator() const { return canon_; }
  bool is_zero() const { return canon_.is_zero(); }
  bool is_unit() const;
  bool contains(const RingElement& e) const;
  Ideal power(unsigned long e) const;
  std::string to_string() const;

 private:
  RingSpec ring_;
  std::vector<RingElement> gens_;
  RingElement canon_;
};

bool ideal_membership(const RingElement& e, const Ideal& ideal);

/// p-adic valuation of a nonzero integer.
unsigned long valuation(const mpz_class& n, const mpz_class& p);

bool is_prime(const mpz_class& n);

}  // namespace qwidth
