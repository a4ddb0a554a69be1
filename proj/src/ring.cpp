#include "qwidth/ring.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qwidth {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MismatchedRings: return "MismatchedRings";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroIdeal: return "ZeroIdeal";
    case ErrorKind::NotSL: return "NotSL";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::CentralInput: return "CentralInput";
    case ErrorKind::NotCongruent: return "NotCongruent";
    case ErrorKind::TrivialInput: return "TrivialInput";
    case ErrorKind::NoUnitFound: return "NoUnitFound";
    case ErrorKind::CapAmbiguous: return "CapAmbiguous";
    case ErrorKind::InnerUnbounded: return "InnerUnbounded";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::BadTransversal: return "BadTransversal";
    case ErrorKind::NoSmallVector: return "NoSmallVector";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::ReplayMismatch: return "ReplayMismatch";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

bool is_prime(const mpz_class& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

unsigned long valuation(const mpz_class& n, const mpz_class& p) {
  mpz_class rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

namespace {

mpz_class parse_integer(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw Error(ErrorKind::ParseError, "empty integer");
  std::size_t start = (str[0] == '-' || str[0] == '+') ? 1 : 0;
  if (start == str.size() ||
      !std::all_of(str.begin() + static_cast<long>(start), str.end(),
                   [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(ErrorKind::ParseError, "bad integer '" + str + "'");
  if (str[0] == '+') str.erase(0, 1);
  return mpz_class(str, 10);
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

void require_same(const RingElement& a, const RingElement& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorKind::MismatchedRings,
                a.ring().descriptor() + " vs " + b.ring().descriptor());
}

// Polynomial helpers over F_p; inputs and outputs are normalized.
using Poly = std::vector<mpz_class>;

void trim(Poly& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw Error(ErrorKind::InternalError, "non-invertible leading coefficient");
  return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den, const mpz_class& p) {
  if (den.empty()) throw Error(ErrorKind::NotInvertible, "polynomial division by zero");
  Poly rem = num;
  Poly quo;
  if (rem.size() >= den.size()) quo.assign(rem.size() - den.size() + 1, 0);
  const mpz_class lead_inv = inv_mod(den.back(), p);
  while (rem.size() >= den.size() && !rem.empty()) {
    const std::size_t shift = rem.size() - den.size();
    const mpz_class f = mod_floor(rem.back() * lead_inv, p);
    quo[shift] = f;
    for (std::size_t i = 0; i < den.size(); ++i)
      rem[shift + i] = mod_floor(rem[shift + i] - f * den[i], p);
    trim(rem);
  }
  trim(quo);
  return {quo, rem};
}

}  // namespace

// ---------------------------------------------------------------- RingSpec

RingSpec::RingSpec() : RingSpec(integers()) {}

RingSpec RingSpec::integers() {
  static const auto z = std::make_shared<const Data>(Data{RingKind::Integers, 0, false});
  return RingSpec(z);
}

RingSpec RingSpec::integers_mod(const mpz_class& modulus) {
  if (modulus < 2) throw Error(ErrorKind::ParseError, "modulus must be >= 2");
  return RingSpec(
      std::make_shared<const Data>(Data{RingKind::IntegersMod, modulus, is_prime(modulus)}));
}

RingSpec RingSpec::poly_over_fp(const mpz_class& prime) {
  if (!is_prime(prime)) throw Error(ErrorKind::ParseError, "F_p[x] needs a prime p");
  return RingSpec(
      std::make_shared<const Data>(Data{RingKind::PolyOverFiniteField, prime, true}));
}

RingSpec RingSpec::localized(const mpz_class& prime) {
  if (!is_prime(prime)) throw Error(ErrorKind::ParseError, "Z[1/p] needs a prime p");
  return RingSpec(std::make_shared<const Data>(Data{RingKind::LocalizedIntegers, prime, true}));
}

RingSpec RingSpec::parse(std::string_view d) {
  auto digits = [&](std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw Error(ErrorKind::ParseError, "bad ring descriptor '" + std::string(d) + "'");
    return mpz_class(std::string(s), 10);
  };
  if (d == "Z") return integers();
  if (d.starts_with("Z/")) return integers_mod(digits(d.substr(2)));
  if (d.starts_with("Z[1/") && d.ends_with("]")) return localized(digits(d.substr(4, d.size() - 5)));
  if (d.starts_with("F") && d.ends_with("[x]")) return poly_over_fp(digits(d.substr(1, d.size() - 4)));
  throw Error(ErrorKind::ParseError, "bad ring descriptor '" + std::string(d) + "'");
}

std::string RingSpec::descriptor() const {
  switch (d_->kind) {
    case RingKind::Integers: return "Z";
    case RingKind::IntegersMod: return "Z/" + d_->param.get_str();
    case RingKind::PolyOverFiniteField: return "F" + d_->param.get_str() + "[x]";
    case RingKind::LocalizedIntegers: return "Z[1/" + d_->param.get_str() + "]";
  }
  return "?";
}

bool RingSpec::is_domain() const {
  return d_->kind != RingKind::IntegersMod || d_->prime_param;
}

bool operator==(const RingSpec& a, const RingSpec& b) {
  return a.d_ == b.d_ || (a.d_->kind == b.d_->kind && a.d_->param == b.d_->param);
}

// ------------------------------------------------------------- RingElement

RingElement::RingElement(RingSpec ring) : ring_(std::move(ring)), v_(0) {}

RingElement RingElement::from_integer(const RingSpec& ring, const mpz_class& value) {
  RingElement e(ring);
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
    case RingKind::LocalizedIntegers:
      e.v_ = value;
      break;
    case RingKind::PolyOverFiniteField:
      e.c_ = {value};
      break;
  }
  e.normalize();
  return e;
}

RingElement RingElement::from_coefficients(const RingSpec& ring, std::vector<mpz_class> coeffs) {
  if (ring.kind() != RingKind::PolyOverFiniteField)
    throw Error(ErrorKind::UnsupportedRing, "coefficient list outside F_p[x]");
  RingElement e(ring);
  e.c_ = std::move(coeffs);
  e.normalize();
  return e;
}

RingElement RingElement::from_localized(const RingSpec& ring, mpz_class numerator, long exponent) {
  if (ring.kind() != RingKind::LocalizedIntegers)
    throw Error(ErrorKind::UnsupportedRing, "n*p^k form outside Z[1/p]");
  RingElement e(ring);
  e.v_ = std::move(numerator);
  e.k_ = exponent;
  e.normalize();
  return e;
}

RingElement RingElement::indeterminate(const RingSpec& ring) {
  return from_coefficients(ring, {0, 1});
}

RingElement RingElement::parse(const RingSpec& ring, std::string_view text) {
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return from_integer(ring, parse_integer(text));
    case RingKind::PolyOverFiniteField: {
      std::vector<mpz_class> coeffs;
      std::size_t pos = 0;
      while (true) {
        const std::size_t comma = text.find(',', pos);
        coeffs.push_back(parse_integer(text.substr(pos, comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
      return from_coefficients(ring, std::move(coeffs));
    }
    case RingKind::LocalizedIntegers: {
      const std::size_t star = text.find('*');
      if (star == std::string_view::npos) return from_integer(ring, parse_integer(text));
      const std::size_t caret = text.find('^', star);
      if (caret == std::string_view::npos)
        throw Error(ErrorKind::ParseError, "expected n*p^k, got '" + std::string(text) + "'");
      if (parse_integer(text.substr(star + 1, caret - star - 1)) != ring.parameter())
        throw Error(ErrorKind::ParseError, "prime mismatch in '" + std::string(text) + "'");
      const mpz_class k = parse_integer(text.substr(caret + 1));
      if (!k.fits_slong_p()) throw Error(ErrorKind::ParseError, "exponent out of range");
      return from_localized(ring, parse_integer(text.substr(0, star)), k.get_si());
    }
  }
  throw Error(ErrorKind::ParseError, "unreachable");
}

std::string RingElement::to_string() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return v_.get_str();
    case RingKind::PolyOverFiniteField: {
      if (c_.empty()) return "0";
      std::string out;
      for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ',';
        out += c_[i].get_str();
      }
      return out;
    }
    case RingKind::LocalizedIntegers:
      return v_.get_str() + "*" + ring_.parameter().get_str() + "^" + std::to_string(k_);
  }
  return "?";
}

void RingElement::normalize() {
  switch (ring_.kind()) {
    case RingKind::Integers:
      break;
    case RingKind::IntegersMod:
      v_ = mod_floor(v_, ring_.parameter());
      break;
    case RingKind::PolyOverFiniteField:
      for (auto& c : c_) c = mod_floor(c, ring_.parameter());
      trim(c_);
      break;
    case RingKind::LocalizedIntegers:
      if (v_ == 0) {
        k_ = 0;
      } else {
        mpz_class rest;
        const auto removed = mpz_remove(rest.get_mpz_t(), v_.get_mpz_t(), ring_.parameter().get_mpz_t());
        v_ = rest;
        k_ += static_cast<long>(removed);
      }
      break;
  }
}

bool RingElement::is_zero() const {
  return ring_.kind() == RingKind::PolyOverFiniteField ? c_.empty() : v_ == 0;
}

bool RingElement::is_one() const {
  switch (ring_.kind()) {
    case RingKind::PolyOverFiniteField: return c_.size() == 1 && c_[0] == 1;
    case RingKind::LocalizedIntegers: return v_ == 1 && k_ == 0;
    default: return v_ == 1;
  }
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  r.v_ = -r.v_;
  for (auto& c : r.c_) c = -c;
  r.normalize();
  return r;
}

RingElement RingElement::pow(unsigned long e) const {
  RingElement result = from_integer(ring_, 1);
  RingElement base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

namespace {

RingElement add_or_sub(const RingElement& a, const RingElement& b, bool subtract) {
  require_same(a, b);
  const RingSpec& ring = a.ring();
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return RingElement::from_integer(ring, subtract ? mpz_class(a.value() - b.value()) : mpz_class(a.value() + b.value()));
    case RingKind::PolyOverFiniteField: {
      Poly c(std::max(a.coefficients().size(), b.coefficients().size()), 0);
      for (std::size_t i = 0; i < a.coefficients().size(); ++i) c[i] += a.coefficients()[i];
      for (std::size_t i = 0; i < b.coefficients().size(); ++i)
        c[i] += subtract ? mpz_class(-b.coefficients()[i]) : b.coefficients()[i];
      return RingElement::from_coefficients(ring, std::move(c));
    }
    case RingKind::LocalizedIntegers: {
      if (a.is_zero()) return subtract ? -b : b;
      if (b.is_zero()) return a;
      const long k = std::min(a.exponent(), b.exponent());
      mpz_class pa, pb;
      mpz_pow_ui(pa.get_mpz_t(), ring.parameter().get_mpz_t(), static_cast<unsigned long>(a.exponent() - k));
      mpz_pow_ui(pb.get_mpz_t(), ring.parameter().get_mpz_t(), static_cast<unsigned long>(b.exponent() - k));
      const mpz_class bv = subtract ? mpz_class(-b.value()) : b.value();
      return RingElement::from_localized(ring, a.value() * pa + bv * pb, k);
    }
  }
  throw Error(ErrorKind::InternalError, "unreachable");
}

}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) { return add_or_sub(a, b, false); }
RingElement operator-(const RingElement& a, const RingElement& b) { return add_or_sub(a, b, true); }

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  const RingSpec& ring = a.ring();
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return RingElement::from_integer(ring, a.value() * b.value());
    case RingKind::PolyOverFiniteField: {
      const auto& x = a.coefficients();
      const auto& y = b.coefficients();
      if (x.empty() || y.empty()) return RingElement(ring);
      Poly c(x.size() + y.size() - 1, 0);
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) c[i + j] += x[i] * y[j];
      return RingElement::from_coefficients(ring, std::move(c));
    }
    case RingKind::LocalizedIntegers:
      return RingElement::from_localized(ring, a.value() * b.value(), a.exponent() + b.exponent());
  }
  throw Error(ErrorKind::InternalError, "unreachable");
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.ring_ == b.ring_ && a.v_ == b.v_ && a.k_ == b.k_ && a.c_ == b.c_;
}

RingElement ring_arith(const RingElement& a, const RingElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw Error(ErrorKind::InternalError, "unreachable");
}

// ------------------------------------------------------------- gcd & units

std::optional<RingElement> unit_check(const RingElement& e) {
  const RingSpec& ring = e.ring();
  switch (ring.kind()) {
    case RingKind::Integers:
      if (e.value() == 1 || e.value() == -1) return e;
      return std::nullopt;
    case RingKind::IntegersMod: {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), e.value().get_mpz_t(), ring.parameter().get_mpz_t()) == 0)
        return std::nullopt;
      return RingElement::from_integer(ring, inv);
    }
    case RingKind::PolyOverFiniteField:
      if (e.coefficients().size() != 1) return std::nullopt;
      return RingElement::from_integer(ring, inv_mod(e.coefficients()[0], ring.parameter()));
    case RingKind::LocalizedIntegers:
      if (e.value() != 1 && e.value() != -1) return std::nullopt;
      return RingElement::from_localized(ring, e.value(), -e.exponent());
  }
  return std::nullopt;
}

namespace {

// Integer Bezout over a list: g = gcd >= 0 and g = sum c_i v_i.
mpz_class integer_bezout(std::span<const mpz_class> vals, std::vector<mpz_class>& coeffs) {
  coeffs.assign(vals.size(), 0);
  mpz_class g = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    mpz_class ng, s, t;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), vals[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) coeffs[j] *= s;
    coeffs[i] = t;
    g = ng;
  }
  return g;
}

}  // namespace

GcdResult extended_gcd(std::span<const RingElement> elems) {
  if (elems.empty()) throw Error(ErrorKind::InternalError, "extended_gcd of empty list");
  const RingSpec& ring = elems[0].ring();
  for (const auto& e : elems) require_same(elems[0], e);

  switch (ring.kind()) {
    case RingKind::Integers: {
      std::vector<mpz_class> vals, c;
      for (const auto& e : elems) vals.push_back(e.value());
      const mpz_class g = integer_bezout(vals, c);
      GcdResult r{RingElement::from_integer(ring, g), {}};
      for (const auto& x : c) r.coeffs.push_back(RingElement::from_integer(ring, x));
      return r;
    }
    case RingKind::IntegersMod: {
      std::vector<mpz_class> vals, c;
      for (const auto& e : elems) vals.push_back(e.value());
      vals.push_back(ring.parameter());
      const mpz_class g = integer_bezout(vals, c);
      GcdResult r{RingElement::from_integer(ring, g), {}};
      for (std::size_t i = 0; i + 1 < c.size(); ++i) r.coeffs.push_back(RingElement::from_integer(ring, c[i]));
      return r;
    }
    case RingKind::LocalizedIntegers: {
      std::vector<mpz_class> vals, c;
      for (const auto& e : elems) vals.push_back(e.value());
      const mpz_class g = integer_bezout(vals, c);
      // c_i * n_i = (c_i * p^-k_i) * (n_i * p^k_i); the p-free g is canonical.
      GcdResult r{RingElement::from_integer(ring, g), {}};
      for (std::size_t i = 0; i < c.size(); ++i)
        r.coeffs.push_back(RingElement::from_localized(ring, c[i], -elems[i].exponent()));
      const RingElement unit = RingElement::from_localized(ring, 1, -r.g.exponent());
      r.g = r.g * unit;
      for (auto& x : r.coeffs) x = x * unit;
      return r;
    }
    case RingKind::PolyOverFiniteField: {
      const mpz_class& p = ring.parameter();
      const RingElement zero(ring), one = RingElement::from_integer(ring, 1);
      RingElement g = zero;
      std::vector<RingElement> coeffs;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        // Extended Euclid on (g, elems[i]).
        RingElement r0 = g, r1 = elems[i];
        RingElement s0 = one, s1 = zero, t0 = zero, t1 = one;
        while (!r1.is_zero()) {
          auto [q, rem] = poly_divmod(r0.coefficients(), r1.coefficients(), p);
          const RingElement qe = RingElement::from_coefficients(ring, q);
          r0 = std::exchange(r1, RingElement::from_coefficients(ring, rem));
          s0 = std::exchange(s1, s0 - qe * s1);
          t0 = std::exchange(t1, t0 - qe * t1);
        }
        for (auto& c : coeffs) c = c * s0;
        coeffs.push_back(t0);
        g = r0;
      }
      if (!g.is_zero()) {
        const RingElement lead_inv = RingElement::from_integer(ring, inv_mod(g.coefficients().back(), p));
        g = g * lead_inv;
        for (auto& c : coeffs) c = c * lead_inv;
      }
      return GcdResult{g, coeffs};
    }
  }
  throw Error(ErrorKind::InternalError, "unreachable");
}

std::optional<RingElement> divide_exact(const RingElement& num, const RingElement& den) {
  require_same(num, den);
  const RingSpec& ring = num.ring();
  if (den.is_zero()) {
    if (num.is_zero()) return RingElement(ring);
    return std::nullopt;
  }
  switch (ring.kind()) {
    case RingKind::Integers:
      if (!mpz_divisible_p(num.value().get_mpz_t(), den.value().get_mpz_t())) return std::nullopt;
      return RingElement::from_integer(ring, num.value() / den.value());
    case RingKind::IntegersMod: {
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), den.value().get_mpz_t(),
                 ring.parameter().get_mpz_t());
      if (!mpz_divisible_p(num.value().get_mpz_t(), g.get_mpz_t())) return std::nullopt;
      return RingElement::from_integer(ring, s * (num.value() / g));
    }
    case RingKind::PolyOverFiniteField: {
      auto [q, rem] = poly_divmod(num.coefficients(), den.coefficients(), ring.parameter());
      if (!rem.empty()) return std::nullopt;
      return RingElement::from_coefficients(ring, q);
    }
    case RingKind::LocalizedIntegers:
      if (!mpz_divisible_p(num.value().get_mpz_t(), den.value().get_mpz_t())) return std::nullopt;
      return RingElement::from_localized(ring, num.value() / den.value(), num.exponent() - den.exponent());
  }
  return std::nullopt;
}

mpz_class euclidean_size(const RingElement& e) {
  switch (e.ring().kind()) {
    case RingKind::Integers: return abs(e.value());
    case RingKind::IntegersMod: return e.value();
    case RingKind::PolyOverFiniteField: return mpz_class(static_cast<unsigned long>(e.coefficients().size()));
    case RingKind::LocalizedIntegers: break;
  }
  throw Error(ErrorKind::UnsupportedRing, "no Euclidean structure on " + e.ring().descriptor());
}

std::pair<RingElement, RingElement> euclidean_divmod(const RingElement& num, const RingElement& den) {
  require_same(num, den);
  const RingSpec& ring = num.ring();
  if (den.is_zero()) throw Error(ErrorKind::NotInvertible, "division by zero");
  switch (ring.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod: {
      mpz_class q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.value().get_mpz_t(), den.value().get_mpz_t());
      return {RingElement::from_integer(ring, q), RingElement::from_integer(ring, r)};
    }
    case RingKind::PolyOverFiniteField: {
      auto [q, r] = poly_divmod(num.coefficients(), den.coefficients(), ring.parameter());
      return {RingElement::from_coefficients(ring, q), RingElement::from_coefficients(ring, r)};
    }
    case RingKind::LocalizedIntegers: break;
  }
  throw Error(ErrorKind::UnsupportedRing, "no Euclidean structure on " + ring.descriptor());
}

bool is_unimodular(std::span<const RingElement> v) {
  if (v.empty()) return false;
  return unit_check(extended_gcd(v).g).has_value();
}

// ------------------------------------------------------------------ Ideal

Ideal::Ideal(RingSpec ring, std::vector<RingElement> generators)
    : ring_(std::move(ring)), gens_(std::move(generators)), canon_(ring_) {
  if (gens_.empty()) throw Error(ErrorKind::ParseError, "ideal needs at least one generator");
  for (const auto& g : gens_)
    if (!(g.ring() == ring_))
      throw Error(ErrorKind::MismatchedRings, "generator " + g.to_string() + " not in " + ring_.descriptor());
  canon_ = extended_gcd(gens_).g;
}

Ideal Ideal::principal(const RingElement& g) { return Ideal(g.ring(), {g}); }

Ideal Ideal::unit(const RingSpec& ring) { return principal(RingElement::from_integer(ring, 1)); }

Ideal Ideal::parse(const RingSpec& ring, std::string_view text) {
  std::vector<RingElement> gens;
  std::size_t pos = 0;
  while (true) {
    const std::size_t semi = text.find(';', pos);
    gens.push_back(RingElement::parse(ring, text.substr(pos, semi - pos)));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return Ideal(ring, std::move(gens));
}

bool Ideal::is_unit() const { return unit_check(canon_).has_value(); }

bool Ideal::contains(const RingElement& e) const {
  if (!(e.ring() == ring_)) throw Error(ErrorKind::MismatchedRings, "membership across rings");
  if (e.is_zero()) return true;
  if (ring_.kind() == RingKind::IntegersMod) {
    // canon_ is gcd(gens, m) reduced mod m; zero stands for m itself.
    const mpz_class g = canon_.is_zero() ? ring_.parameter() : canon_.value();
    return mpz_divisible_p(e.value().get_mpz_t(), g.get_mpz_t()) != 0;
  }
  return divide_exact(e, canon_).has_value();
}

Ideal Ideal::power(unsigned long e) const { return principal(canon_.pow(e)); }

std::string Ideal::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ';';
    out += gens_[i].to_string();
  }
  return out;
}

bool ideal_membership(const RingElement& e, const Ideal& ideal) { return ideal.contains(e); }

}  // namespace qwidth
