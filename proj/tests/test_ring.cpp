#include <random>

#include "doctest.h"
#include "qwidth/ring.hpp"
#include "test_support.hpp"

using namespace qwidth;
using qwidth::testing::elt;
using qwidth::testing::z;

namespace {

const RingSpec kRings[] = {
    RingSpec::integers(),
    RingSpec::integers_mod(4),
    RingSpec::integers_mod(12),
    RingSpec::integers_mod(7),
    RingSpec::poly_over_fp(2),
    RingSpec::poly_over_fp(5),
    RingSpec::localized(3),
};

RingElement random_element(std::mt19937_64& rng, const RingSpec& ring) {
  std::uniform_int_distribution<long> small(-20, 20);
  switch (ring.kind()) {
    case RingKind::PolyOverFiniteField: {
      std::uniform_int_distribution<int> deg(0, 4);
      std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = small(rng);
      return RingElement::from_coefficients(ring, c);
    }
    case RingKind::LocalizedIntegers: {
      std::uniform_int_distribution<long> k(-3, 3);
      return RingElement::from_localized(ring, small(rng), k(rng));
    }
    default:
      return RingElement::from_integer(ring, small(rng) * 37 + small(rng));
  }
}

}  // namespace

TEST_CASE("descriptor grammar round-trips and rejects bad input") {
  for (const char* d : {"Z", "Z/4", "Z/1000000007", "F2[x]", "F7[x]", "Z[1/5]"}) {
    CHECK(RingSpec::parse(d).descriptor() == d);
    CHECK(RingSpec::parse(RingSpec::parse(d).descriptor()) == RingSpec::parse(d));
  }
  for (const char* bad : {"Z/0", "Z/1", "F4[x]", "Z[1/6]", "z", "Z/", "Q", "Z/-3"})
    CHECK_THROWS_AS(RingSpec::parse(bad), Error);
  CHECK_FALSE(RingSpec::parse("Z/6").is_domain());
  CHECK(RingSpec::parse("Z/7").is_domain());
}

TEST_CASE("ring_arith examples") {
  CHECK(ring_arith(z(2), z(3), ArithOp::Add) == z(5));
  const auto z4 = RingSpec::integers_mod(4);
  CHECK(ring_arith(elt(z4, 3), elt(z4, 3), ArithOp::Mul) == elt(z4, 1));
  const auto f2x = RingSpec::poly_over_fp(2);
  const auto xp1 = RingElement::from_coefficients(f2x, {1, 1});
  CHECK(ring_arith(xp1, xp1, ArithOp::Mul) == RingElement::from_coefficients(f2x, {1, 0, 1}));
  CHECK((xp1 * xp1).to_string() == "1,0,1");
}

TEST_CASE("mismatched parents are rejected") {
  const auto z4 = RingSpec::integers_mod(4);
  try {
    (void)ring_arith(z(1), elt(z4, 1), ArithOp::Add);
    FAIL("expected MismatchedRings");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MismatchedRings);
  }
}

TEST_CASE("element serialization") {
  const auto zp = RingSpec::localized(5);
  const auto e = RingElement::from_localized(zp, 75, -3);  // 3 * 5^-1
  CHECK(e.value() == 3);
  CHECK(e.exponent() == -1);
  CHECK(e.to_string() == "3*5^-1");
  CHECK(RingElement::parse(zp, "3*5^-1") == e);
  CHECK(RingElement::parse(zp, "75") == RingElement::from_localized(zp, 3, 2));
  CHECK(RingElement(zp).to_string() == "0*5^0");
  CHECK_THROWS_AS(RingElement::parse(zp, "3*7^1"), Error);

  const auto f3 = RingSpec::poly_over_fp(3);
  CHECK(RingElement::parse(f3, "4,0,3").to_string() == "1");
  CHECK(RingElement::parse(f3, "0").is_zero());
  CHECK(RingElement::parse(RingSpec::integers_mod(7), "-1").to_string() == "6");
  CHECK_THROWS_AS(RingElement::parse(RingSpec::integers(), "1.5"), Error);
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(11);
  for (const auto& ring : kRings) {
    CAPTURE(ring.descriptor());
    for (int t = 0; t < 200; ++t) {
      const auto a = random_element(rng, ring), b = random_element(rng, ring), c = random_element(rng, ring);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == RingElement(ring));
      CHECK(RingElement::parse(ring, a.to_string()) == a);
    }
  }
}

TEST_CASE("extended_gcd examples") {
  const std::vector<RingElement> v{z(4), z(10)};
  const auto r = extended_gcd(v);
  CHECK(r.g == z(2));
  CHECK(r.coeffs[0] * z(4) + r.coeffs[1] * z(10) == z(2));

  const auto one = extended_gcd(std::vector<RingElement>{z(1)});
  CHECK(one.g == z(1));
  CHECK(one.coeffs[0] == z(1));

  const auto f2x = RingSpec::poly_over_fp(2);
  const std::vector<RingElement> w{RingElement::indeterminate(f2x), RingElement::from_coefficients(f2x, {1, 1})};
  const auto rw = extended_gcd(w);
  CHECK(rw.g.is_one());
  CHECK(rw.coeffs[0] * w[0] + rw.coeffs[1] * w[1] == rw.g);
}

TEST_CASE("extended_gcd re-multiplies on random lists") {
  std::mt19937_64 rng(5);
  for (const auto& ring : kRings) {
    CAPTURE(ring.descriptor());
    for (int t = 0; t < 100; ++t) {
      std::vector<RingElement> elems;
      for (int k = 0; k < 1 + t % 4; ++k) elems.push_back(random_element(rng, ring));
      const auto r = extended_gcd(elems);
      RingElement sum(ring);
      for (std::size_t i = 0; i < elems.size(); ++i) sum += r.coeffs[i] * elems[i];
      CHECK(sum == r.g);
      // g generates the same ideal: every element is a multiple of g.
      const Ideal by_g = Ideal::principal(r.g);
      for (const auto& e : elems) CHECK(by_g.contains(e));
    }
  }
}

TEST_CASE("ideal membership") {
  const Ideal i410(RingSpec::integers(), {z(4), z(10)});
  CHECK(i410.contains(z(6)));
  CHECK(i410.generator() == z(2));
  CHECK_FALSE(Ideal::principal(z(2)).contains(z(3)));
  CHECK(ideal_membership(z(0), Ideal::principal(z(0))));

  const auto z12 = RingSpec::integers_mod(12);
  const Ideal i(z12, {elt(z12, 8)});
  CHECK(i.generator() == elt(z12, 4));  // gcd(8, 12)
  CHECK(i.contains(elt(z12, 4)));
  CHECK_FALSE(i.contains(elt(z12, 2)));

  const auto zp = RingSpec::localized(3);
  const Ideal j = Ideal::principal(RingElement::from_localized(zp, 18, 0));  // = (2)
  CHECK(j.generator() == RingElement::from_localized(zp, 2, 0));
  CHECK(j.contains(RingElement::from_localized(zp, 4, -5)));
  CHECK_FALSE(j.contains(RingElement::from_localized(zp, 5, 0)));
  CHECK(Ideal::principal(RingElement::from_localized(zp, 1, 4)).is_unit());
}

TEST_CASE("every generator belongs to its ideal") {
  std::mt19937_64 rng(9);
  for (const auto& ring : kRings)
    for (int t = 0; t < 50; ++t) {
      std::vector<RingElement> gens{random_element(rng, ring), random_element(rng, ring)};
      const Ideal I(ring, gens);
      for (const auto& g : gens) CHECK(ideal_membership(g, I));
      CHECK(ideal_membership(I.generator(), Ideal(ring, gens)));
      CHECK(ideal_membership(RingElement(ring), I));
    }
}

TEST_CASE("unit_check") {
  CHECK(unit_check(z(-1)) == z(-1));
  const auto z5 = RingSpec::integers_mod(5);
  CHECK(unit_check(elt(z5, 2)) == elt(z5, 3));
  CHECK_FALSE(unit_check(z(2)).has_value());
  const auto zp = RingSpec::localized(2);
  CHECK(unit_check(RingElement::from_localized(zp, -1, 3)) == RingElement::from_localized(zp, -1, -3));

  std::mt19937_64 rng(3);
  for (const auto& ring : kRings)
    for (int t = 0; t < 100; ++t) {
      const auto e = random_element(rng, ring);
      if (auto inv = unit_check(e)) CHECK((e * *inv).is_one());
    }
}

TEST_CASE("divide_exact and euclidean_divmod") {
  CHECK(divide_exact(z(12), z(4)) == z(3));
  CHECK_FALSE(divide_exact(z(12), z(5)).has_value());
  const auto z12 = RingSpec::integers_mod(12);
  const auto q = divide_exact(elt(z12, 8), elt(z12, 4));
  REQUIRE(q.has_value());
  CHECK(*q * elt(z12, 4) == elt(z12, 8));
  CHECK_FALSE(divide_exact(elt(z12, 3), elt(z12, 2)).has_value());

  std::mt19937_64 rng(21);
  for (const auto& ring : {RingSpec::integers(), RingSpec::integers_mod(9), RingSpec::poly_over_fp(3)})
    for (int t = 0; t < 200; ++t) {
      const auto a = random_element(rng, ring);
      const auto b = random_element(rng, ring);
      if (b.is_zero()) continue;
      const auto [quo, rem] = euclidean_divmod(a, b);
      CHECK(quo * b + rem == a);
      CHECK(euclidean_size(rem) < euclidean_size(b));
    }
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(std::vector<RingElement>{z(2), z(3)}));
  CHECK_FALSE(is_unimodular(std::vector<RingElement>{z(2), z(4)}));
  const auto z6 = RingSpec::integers_mod(6);
  CHECK(is_unimodular(std::vector<RingElement>{elt(z6, 2), elt(z6, 3)}));
}
