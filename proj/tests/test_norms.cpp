#include <random>
#include <set>

#include "doctest.h"
#include "qwidth/norms.hpp"
#include "test_support.hpp"

using namespace qwidth;
using qwidth::testing::elt;
using qwidth::testing::random_elementary_product;
using qwidth::testing::z;

namespace {

const RingSpec Z = RingSpec::integers();

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

// 2^-v with v the least 2-adic valuation among entries of g - I.
mpq_class two_adic_level_oracle(const SqMatrix& g) {
  long best = -1;
  for (std::size_t i = 1; i <= g.dim(); ++i)
    for (std::size_t j = 1; j <= g.dim(); ++j) {
      mpz_class d = g(i, j).value() - (i == j ? 1 : 0);
      if (d == 0) continue;
      long v = 0;
      while (d % 2 == 0) {
        d /= 2;
        ++v;
      }
      if (best < 0 || v < best) best = v;
    }
  if (best < 0) return 0;
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(best);
  return mpq_class(mpz_class(1), den);
}

FiltrationChain two_adic_chain(std::size_t n) {
  FiltrationChain c;
  c.n = n;
  return c;
}

SqMatrix minus_identity(const RingSpec& r, std::size_t n) {
  SqMatrix m = SqMatrix::identity(r, n);
  for (std::size_t i = 1; i <= n; ++i) m.at(i, i) = elt(r, -1);
  return m;
}

}  // namespace

TEST_CASE("filtration norm") {
  const auto norm = filtration_norm(two_adic_chain(3));
  CHECK(norm(SqMatrix::identity(Z, 3)) == 0);
  CHECK(norm(elementary(1, 2, z(4), 3)) == mpq_class(1, 4));
  CHECK(norm(elementary(1, 2, z(3), 3)) == 1);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const SqMatrix g = norm.domain.sample(rng);
    CHECK(norm(g) == two_adic_level_oracle(g));
    const SqMatrix h = random_elementary_product(rng, Z, 3, 8);
    CHECK(norm(conjugate(g, h)) == norm(g));
    const SqMatrix k = norm.domain.sample(rng);
    CHECK(norm(g * k) <= std::max(norm(g), norm(k)));
  }
  FiltrationChain capped = two_adic_chain(3);
  capped.cap = 3;
  CHECK(kind_of([&] { filtration_norm(capped)(elementary(1, 2, z(16), 3)); }) == ErrorKind::CapAmbiguous);
  FiltrationChain custom = two_adic_chain(3);
  custom.values = {mpq_class(1), mpq_class(1, 3), mpq_class(1, 9)};
  CHECK(filtration_norm(custom)(elementary(2, 1, z(2), 3)) == mpq_class(1, 3));
  CHECK(kind_of([&] { filtration_norm(custom)(elementary(2, 1, z(8), 3)); }) == ErrorKind::CapAmbiguous);
  custom.values = {mpq_class(1), mpq_class(1)};
  CHECK(kind_of([&] { filtration_norm(custom); }) == ErrorKind::ParseError);
  CHECK(axiom_harness(norm, 1000, 3).ok());
}

TEST_CASE("bounded transform") {
  const auto f2 = std::make_shared<const FiniteGroupTable>(enumerate_sl(3, RingSpec::integers_mod(2)));
  const auto d = bounded_transform(dirac_norm(table_domain(f2)));
  CHECK(d(f2->identity()) == 0);
  CHECK(d((f2->identity() + 1) % f2->order()) == mpq_class(1, 2));
  const auto b = bounded_transform(filtration_norm(two_adic_chain(3)));
  const auto raw = filtration_norm(two_adic_chain(3));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const SqMatrix g = raw.domain.sample(rng), h = raw.domain.sample(rng);
    CHECK(b(g) >= 0);
    CHECK(b(g) < 1);
    CHECK((raw(g) < raw(h)) == (b(g) < b(h)));
    CHECK(b(g) == raw(g) / (1 + raw(g)));
  }
  CHECK(axiom_harness(b, 500, 4).ok());
}

TEST_CASE("singular extension") {
  const Ideal two = Ideal::principal(z(2));
  auto inner = bounded_transform(filtration_norm(two_adic_chain(3)));
  inner.domain = matrix_domain(Z, 3, z(2), 1, 4);
  const auto in_n = [two](const SqMatrix& g) { return is_congruent_to_identity(g, two); };
  const auto ambient = matrix_domain(Z, 3, z(2), 0, 4);
  const auto s = singular_extension(inner, in_n, ambient);
  CHECK(s(elementary(1, 3, z(2), 3)) == inner(elementary(1, 3, z(2), 3)));
  CHECK(s(elementary(1, 3, z(1), 3)) == 1);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const SqMatrix g = inner.domain.sample(rng), h = random_elementary_product(rng, Z, 3, 5);
    if (in_n(h)) continue;
    CHECK(s(g * h) <= s(g) + s(h));
    CHECK(s(h * g) <= s(g) + s(h));
  }
  CHECK(axiom_harness(s, 1000, 6).ok());
  // An unbounded inner norm is rejected.
  auto big = inner;
  big.evaluate = [](const SqMatrix& g) { return mpq_class(g.is_identity() ? 0 : 5); };
  CHECK(kind_of([&] { singular_extension(big, in_n, ambient); }) == ErrorKind::InnerUnbounded);
}

TEST_CASE("quotient norm") {
  const auto f = filtration_norm(two_adic_chain(2));
  const auto same = quotient_norm(f, {SqMatrix::identity(Z, 2)});
  const SqMatrix minus = minus_identity(Z, 2);
  const auto q = quotient_norm(f, {SqMatrix::identity(Z, 2), minus});
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const SqMatrix g = f.domain.sample(rng);
    CHECK(same(g) == f(g));
    CHECK(q(g) == std::min(f(g), f(g * minus)));
    CHECK(q(g) <= 1);
  }
  CHECK(q(minus) == 0);
  CHECK(f(minus) == mpq_class(1, 2));
  CHECK(axiom_harness(q, 1000, 8).ok());
  CHECK(kind_of([&] { quotient_norm(f, {elementary(1, 2, z(2), 2)}); }) == ErrorKind::NotCentral);
}

TEST_CASE("average norm on the level two model") {
  const LevelTwoModel m = level_two_model(3);
  CHECK(m.reps.size() == 168);
  // The base norm is not invariant under all of SL3(Z/4).
  NormEval<SqMatrix> base_ambient = m.base;
  base_ambient.domain.sample_actor = m.ambient.sample;
  CHECK(axiom_harness(base_ambient, 300, 9).violations("invariance") > 0);
  CHECK(axiom_harness(m.base, 300, 9).ok());

  const auto avg = average_norm(m.base, m.reps, 168, m.in_n, m.ambient);
  CHECK(axiom_harness(avg, 1000, 10).ok());
  // Oracle: invariance under every one of the 168 lifts, directly.
  std::mt19937_64 rng(11);
  const SqMatrix g = m.base.domain.sample(rng);
  for (const auto& r : m.reps) CHECK(avg(conjugate(g, r)) == avg(g));

  const RingSpec z4 = RingSpec::integers_mod(4);
  const auto trivial = average_norm(m.base, {SqMatrix::identity(z4, 3)}, 1, m.in_n, m.ambient);
  for (int t = 0; t < 50; ++t) {
    const SqMatrix h = m.base.domain.sample(rng);
    CHECK(trivial(h) == m.base(h));
  }
  CHECK(kind_of([&] { average_norm(m.base, m.reps, 167, m.in_n, m.ambient); }) == ErrorKind::BadTransversal);
  auto dup = m.reps;
  dup[1] = dup[0] * elementary(1, 2, elt(z4, 2), 3);
  CHECK(kind_of([&] { average_norm(m.base, dup, 168, m.in_n, m.ambient); }) == ErrorKind::BadTransversal);
}

TEST_CASE("product sum norm") {
  const auto t1 = std::make_shared<const FiniteGroupTable>(enumerate_sl(2, RingSpec::integers_mod(3)));
  const auto t2 = std::make_shared<const FiniteGroupTable>(enumerate_sl(2, RingSpec::integers_mod(2)));
  const auto w = word_norm_eval(t1, elementary_conjugates(*t1));
  const auto d = dirac_norm(table_domain(t2));
  const auto p = product_sum_norm(w, d);
  CHECK(p({t1->identity(), t2->identity()}) == 0);
  for (std::size_t k = 0; k < t1->order(); ++k) CHECK(p({k, t2->identity()}) == w(k));
  CHECK(axiom_harness(p, 1000, 12).ok());
}

TEST_CASE("word norm") {
  const auto t = std::make_shared<const FiniteGroupTable>(enumerate_sl(2, RingSpec::integers_mod(3)));
  const auto gens = elementary_conjugates(*t);
  CHECK(word_norm(*t, gens, t->identity()).value == 0u);
  for (TableElement g : gens) CHECK(word_norm(*t, gens, g).value == 1u);

  // Oracle: layered product sets S^0, S^1, ... by plain set iteration.
  std::vector<long> layer(t->order(), -1);
  std::set<TableElement> current{t->identity()};
  layer[t->identity()] = 0;
  for (long d = 1; !current.empty(); ++d) {
    std::set<TableElement> next;
    for (TableElement x : current)
      for (TableElement s : gens)
        if (layer[t->mul(x, s)] < 0) next.insert(t->mul(x, s));
    for (TableElement y : next) layer[y] = d;
    current = next;
  }
  const auto w = word_norm_eval(t, gens);
  long max_value = 0;
  for (TableElement k = 0; k < t->order(); ++k) {
    REQUIRE(layer[k] >= 0);
    CHECK(w(k) == layer[k]);
    max_value = std::max(max_value, layer[k]);
  }
  CHECK(w.params.at("max") == std::to_string(max_value));
  for (TableElement g = 0; g < t->order(); ++g)
    for (TableElement h = 0; h < t->order(); h += 5) CHECK(w(t->mul(g, h)) <= w(g) + w(h));
  CHECK(axiom_harness(w, 1000, 13).ok());

  // Budgets: a tiny visit budget leaves a frontier, a tiny closure budget fails outright.
  TableElement far = 0;
  for (TableElement k = 0; k < t->order(); ++k)
    if (layer[k] == max_value) far = k;
  const auto partial = word_norm(*t, gens, far, gens.size() + 1);
  CHECK_FALSE(partial.value.has_value());
  CHECK(partial.frontier > 0);
  CHECK(kind_of([&] { word_norm(*t, gens, far, 3); }) == ErrorKind::BudgetExceeded);
  // Only the center is reachable from the center.
  const auto minus = *t->index_of(minus_identity(t->ring(), 2));
  CHECK(kind_of([&] { word_norm(*t, {minus}, gens[0]); }) == ErrorKind::Unreachable);
}

TEST_CASE("mixed norm on Z^2") {
  const auto n = z2_mixed_norm(2);
  CHECK(n(Z2{0, 0}) == 0);
  CHECK(n(Z2{2, 0}) == mpq_class(1, 4));
  CHECK(n(Z2{12, -3}) == 3);
  CHECK(n(Z2{3, 0}) == mpq_class(1, 2));
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> c(-500, 500);
  for (int t = 0; t < 1000; ++t) {
    const Z2 v{c(rng), c(rng)};
    CHECK(n(Z2{v[0] + v[1], v[1]}) == n(v));
  }
  CHECK(axiom_harness(n, 1000, 15).ok());
  CHECK(kind_of([] { z2_mixed_norm(4); }) == ErrorKind::UnsupportedRing);
}

TEST_CASE("2-adic sup norm, the two inequalities and shrinking") {
  const auto n = padic_sup_norm(2);
  CHECK(n(Z2{8, 12}) == mpq_class(1, 4));
  CHECK(axiom_harness(n, 1000, 16).ok());
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-300, 300);
  for (int t = 0; t < 1000; ++t) {
    const mpz_class x = 2 * c(rng), y = 2 * c(rng), zz = 2 * c(rng);
    CHECK(n(Z2{zz * y, 0}) <= 2 * n(Z2{x, y}));
    CHECK(n(Z2{0, zz * x}) <= 2 * n(Z2{x, y}));
  }

  for (const mpq_class eps : {mpq_class(1, 4), mpq_class(1, 8), mpq_class(1, 16)}) {
    const auto r = shrink_ideal(n, 2, eps, 100'000);
    CHECK(6 * n(r.witness) <= eps);
    CHECK(r.witness[0] != 0);
    CHECK(r.generator == abs(r.witness[0] * r.witness[0] * r.witness[0]));
    CHECK(valuation(r.witness[0], 2) >= 3);
    CHECK(epsilon_ball_violations(n, r.generator, eps, 1000, 18) == 0);
    // Independent ball check.
    std::uniform_int_distribution<long> k(-10'000, 10'000);
    for (int t = 0; t < 1000; ++t) CHECK(n(Z2{r.generator * k(rng), r.generator * k(rng)}) <= eps);
  }
  const auto immediate = shrink_ideal(n, 2, 3);
  CHECK(immediate.tried == 1);
  CHECK(immediate.generator == 8);
  CHECK(kind_of([&] { shrink_ideal(dirac_norm(z2_domain(2)), 2, mpq_class(1, 8), 5000); }) ==
        ErrorKind::NoSmallVector);
}

TEST_CASE("harness reports planted violations") {
  auto broken = filtration_norm(two_adic_chain(3));
  broken.evaluate = [](const SqMatrix&) { return mpq_class(0); };
  const auto r = axiom_harness(broken, 200, 19);
  CHECK_FALSE(r.ok());
  CHECK(r.violations("definiteness") > 0);
  CHECK(r.violations("triangle") == 0);
  const std::string text = r.to_text();
  CHECK(text.find("axiom=definiteness samples=201 violations=") != std::string::npos);
  CHECK(text.find("first: ") != std::string::npos);

  const auto t = std::make_shared<const FiniteGroupTable>(enumerate_sl(3, RingSpec::integers_mod(2)));
  const auto d = axiom_harness(dirac_norm(table_domain(t)), 1000, 20);
  CHECK(d.ok());
  CHECK(d.lines.size() == 5);

  // Not conjugation invariant: the (1, 2) entry parity.
  auto skew = dirac_norm(table_domain(t));
  skew.evaluate = [t](TableElement k) {
    if (k == t->identity()) return mpq_class(0);
    return mpq_class(t->element(k)(1, 2).is_zero() ? 1 : 2);
  };
  CHECK(axiom_harness(skew, 500, 21).violations("invariance") > 0);
}

TEST_CASE("norm config") {
  const auto c = NormConfig::parse("# comment\ntag = filtration\nring=Z\nn=3\nideal=2\n\n");
  CHECK(c.require("tag") == "filtration");
  CHECK(c.get("missing", "x") == "x");
  CHECK(kind_of([&] { c.require("missing"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { NormConfig::parse("tag filtration\n"); }) == ErrorKind::ParseError);

  const auto run = run_norm_config(c, elementary(1, 2, z(4), 3).to_text(), 100, 5);
  CHECK(run.value == "1/4");
  CHECK(run.header.find("seed=5") != std::string::npos);
  REQUIRE(run.report.has_value());
  CHECK(run.report->ok());
  CHECK(run.to_text() == run_norm_config(c, elementary(1, 2, z(4), 3).to_text(), 100, 5).to_text());

  for (const char* text : {"tag=dirac\ngroup=SL3,F2\n", "tag=bounded\n", "tag=singular\n", "tag=quotient\nn=2\n",
                           "tag=average\nn=2\n", "tag=word\n", "tag=product_sum\n", "tag=z2_mixed\np=2\n",
                           "tag=padic_sup\np=3\n", "tag=dirac\n"}) {
    const auto r = run_norm_config(NormConfig::parse(text), std::nullopt, 200, 1);
    REQUIRE(r.report.has_value());
    CHECK_MESSAGE(r.report->ok(), text);
  }
  CHECK(run_norm_config(NormConfig::parse("tag=z2_mixed\n"), std::string("2,0"), 0, 1).value == "1/4");
  CHECK(kind_of([] { run_norm_config(NormConfig::parse("tag=nope\n"), std::nullopt, 0, 1); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { run_norm_config(NormConfig::parse("tag=filtration\nn=x\n"), std::nullopt, 0, 1); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { run_norm_config(NormConfig::parse("tag=product_sum\n"), std::string("x"), 0, 1); }) ==
        ErrorKind::UsageError);
}
