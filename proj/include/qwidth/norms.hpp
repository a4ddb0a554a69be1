#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qwidth/census.hpp"
#include "qwidth/error.hpp"
#include "qwidth/matrix.hpp"

namespace qwidth {

/// A group as the norm harness sees it: arithmetic, an element sampler, and
/// the action under which norms on it are claimed invariant. For ordinary
/// groups the action is conjugation s g s^-1.
template <class E>
struct GroupDomain {
  std::string name;
  std::function<E()> identity;
  std::function<E(const E&, const E&)> mul;
  std::function<E(const E&)> inv;
  std::function<bool(const E&)> is_identity;
  std::function<bool(const E&, const E&)> equal;
  std::function<E(std::mt19937_64&)> sample;
  std::function<std::string(const E&)> show;
  /// Description of the acting group, a sampler for it and the action.
  std::string invariance_scope;
  std::function<E(std::mt19937_64&)> sample_actor;
  std::function<E(const E&, const E&)> act;
};

template <class E>
struct NormEval {
  GroupDomain<E> domain;
  std::function<mpq_class(const E&)> evaluate;
  std::string tag;
  std::map<std::string, std::string> params;

  mpq_class operator()(const E& g) const { return evaluate(g); }
};

using Z2 = std::array<mpz_class, 2>;
using TableElement = std::size_t;

// Domains.

/// Products of `length` random elementary matrices with entries c * step^k,
/// |c| <= 2 and min_power <= k <= max_power, times -I with probability 1/4
/// when n is even; conjugated by random products of elementary matrices with
/// entries in {-2, ..., 2}.
GroupDomain<SqMatrix> matrix_domain(const RingSpec& ring, std::size_t n, const RingElement& step,
                                    unsigned min_power = 0, unsigned max_power = 4, int length = 6);
/// Uniform samples from a finite group table, acted on by conjugation.
GroupDomain<TableElement> table_domain(std::shared_ptr<const FiniteGroupTable> table);
/// The additive group Z^2 restricted to q + q with q = (gen), sampled in a box
/// of multiples of gen * 2^k, acted on by (x, y) -> (x + t y, y) and
/// (x, y) -> (x, y + t x) with t in q.
GroupDomain<Z2> z2_domain(const mpz_class& gen = 1, long box = 50);
/// Direct product; action coordinate-wise.
template <class A, class B>
GroupDomain<std::pair<A, B>> product_domain(const GroupDomain<A>& a, const GroupDomain<B>& b);

// Constructions.

template <class E>
NormEval<E> dirac_norm(const GroupDomain<E>& domain);

struct FiltrationChain {
  RingSpec ring = RingSpec::integers();
  std::size_t n = 3;
  Ideal ideal = Ideal::principal(RingElement::from_integer(RingSpec::integers(), 2));
  /// Value on level i; empty means 2^-i. Must be strictly decreasing.
  std::vector<mpq_class> values;
  unsigned cap = kDefaultLevelCap;

  mpq_class value_at(unsigned level) const;
};

/// ||g|| = value(level(g)) for the chain G_i = Gamma(q^i); 0 at the identity.
/// Throws CapAmbiguous for a non-identity element at or beyond the cap.
NormEval<SqMatrix> filtration_norm(const FiltrationChain& chain);

/// ||g|| = inner(g) on N = {g : in_n(g)}, 1 elsewhere. Samples 256 elements of
/// N and throws InnerUnbounded if one has inner value above 1.
NormEval<SqMatrix> singular_extension(const NormEval<SqMatrix>& inner, std::function<bool(const SqMatrix&)> in_n,
                                      const GroupDomain<SqMatrix>& ambient, std::uint64_t seed = 0);

/// x -> x / (1 + x).
template <class E>
NormEval<E> bounded_transform(const NormEval<E>& norm);

/// ||xA|| = min over a in A of ||xa||. The identity of the domain becomes A.
/// Throws NotCentral unless every a commutes with sampled elements.
NormEval<SqMatrix> quotient_norm(const NormEval<SqMatrix>& norm, const std::vector<SqMatrix>& central_subgroup,
                                 std::uint64_t seed = 0);

/// (1 / index) sum over reps s of ||s n s^-1||, on N = {g : in_n(g)}. The
/// action of the result is taken from `ambient`. Throws BadTransversal when
/// reps.size() != index or two reps share a coset of N.
NormEval<SqMatrix> average_norm(const NormEval<SqMatrix>& norm, const std::vector<SqMatrix>& reps, std::size_t index,
                                std::function<bool(const SqMatrix&)> in_n, const GroupDomain<SqMatrix>& ambient);

template <class A, class B>
NormEval<std::pair<A, B>> product_sum_norm(const NormEval<A>& a, const NormEval<B>& b);

/// Finite model for averaging: G = SL_n(Z/4), N = Gamma(2) (abelian), with a
/// weighted count of odd entries of (g - I) / 2 as the N-invariant base norm
/// and lifts of SL_n(F2) as the transversal.
struct LevelTwoModel {
  NormEval<SqMatrix> base;
  std::vector<SqMatrix> reps;
  std::function<bool(const SqMatrix&)> in_n;
  GroupDomain<SqMatrix> ambient;
};

LevelTwoModel level_two_model(std::size_t n);

struct WordNormResult {
  std::optional<std::uint64_t> value;  // empty when unreached within the budget
  std::size_t frontier = 0;
  std::size_t visited = 0;
};

/// Conjugation closure of `generators` together with inverses.
std::vector<TableElement> conjugation_closure(const FiniteGroupTable& table,
                                              const std::vector<TableElement>& generators);
/// The conjugates of every I + e_ij.
std::vector<TableElement> elementary_conjugates(const FiniteGroupTable& table);

/// Minimal number of elements of the conjugation closure of `generators`
/// whose product is g, by breadth-first search visiting at most `budget`
/// elements. Throws BudgetExceeded when the closure alone is larger than the
/// budget and Unreachable when g lies outside the generated subgroup.
WordNormResult word_norm(const FiniteGroupTable& table, const std::vector<TableElement>& generators, TableElement g,
                         std::size_t budget = 1'000'000);
/// The whole word norm on the subgroup generated by the closure, which must be
/// the full table.
NormEval<TableElement> word_norm_eval(std::shared_ptr<const FiniteGroupTable> table,
                                      const std::vector<TableElement>& generators);

/// max(|x|_p / 2, |y|) on Z^2, invariant under (x, y) -> (x + y, y).
NormEval<Z2> z2_mixed_norm(const mpz_class& p);
/// max(|x|_p, |y|_p) on q + q with q = (p), invariant under E(2, q, Z).
NormEval<Z2> padic_sup_norm(const mpz_class& p);

struct ShrinkResult {
  Z2 witness;
  mpz_class generator;  // x^3
  std::size_t tried;
};

/// First pair (x, y) in q + q with x != 0 and 6 ||(x, y)|| <= epsilon, in
/// shells of growing max(|a|, |b|) for (x, y) = gen * (a, b). Returns the ideal
/// (x^3). Throws NoSmallVector after `bound` candidates.
ShrinkResult shrink_ideal(const NormEval<Z2>& norm, const mpz_class& gen, const mpq_class& epsilon,
                          std::size_t bound = 10'000);
/// Number of sampled points of (x^3) + (x^3) with norm above epsilon.
std::size_t epsilon_ball_violations(const NormEval<Z2>& norm, const mpz_class& ideal_gen, const mpq_class& epsilon,
                                    std::size_t samples, std::uint64_t seed);

struct AxiomLine {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::string first_violation;
};

struct AxiomReport {
  std::string tag;
  std::vector<AxiomLine> lines;

  bool ok() const;
  std::size_t violations(const std::string& axiom) const;
  /// "axiom=<name> samples=<k> violations=<v>" per axiom, each followed by the
  /// first violating tuple when there is one.
  std::string to_text() const;
};

/// Positivity, definiteness, symmetry, triangle and invariance on sampled
/// tuples. Definiteness also checks the identity itself.
template <class E>
AxiomReport axiom_harness(const NormEval<E>& norm, std::size_t samples, std::uint64_t seed);

/// Key=value norm configuration, '#' comments.
struct NormConfig {
  std::map<std::string, std::string> entries;

  static NormConfig parse(std::string_view text);
  std::string get(const std::string& key, const std::string& fallback) const;
  const std::string& require(const std::string& key) const;
};

struct NormRun {
  std::string header;
  std::optional<std::string> value;
  std::optional<AxiomReport> report;

  std::string to_text() const;
};

/// Builds the configured norm (tags: dirac, filtration, singular, bounded,
/// quotient, average, word, product_sum, z2_mixed, padic_sup), evaluates it on
/// `element` (a matrix text or "x,y" for Z^2 norms) when given, and runs the
/// harness when `samples` > 0.
NormRun run_norm_config(const NormConfig& config, const std::optional<std::string>& element, std::size_t samples,
                        std::uint64_t seed);

// Template definitions.

template <class A, class B>
GroupDomain<std::pair<A, B>> product_domain(const GroupDomain<A>& a, const GroupDomain<B>& b) {
  using P = std::pair<A, B>;
  GroupDomain<P> d;
  d.name = a.name + " x " + b.name;
  d.identity = [a, b] { return P{a.identity(), b.identity()}; };
  d.mul = [a, b](const P& x, const P& y) { return P{a.mul(x.first, y.first), b.mul(x.second, y.second)}; };
  d.inv = [a, b](const P& x) { return P{a.inv(x.first), b.inv(x.second)}; };
  d.is_identity = [a, b](const P& x) { return a.is_identity(x.first) && b.is_identity(x.second); };
  d.equal = [a, b](const P& x, const P& y) { return a.equal(x.first, y.first) && b.equal(x.second, y.second); };
  d.sample = [a, b](std::mt19937_64& rng) {
    A x = a.sample(rng);
    return P{std::move(x), b.sample(rng)};
  };
  d.show = [a, b](const P& x) { return "(" + a.show(x.first) + ", " + b.show(x.second) + ")"; };
  d.invariance_scope = a.invariance_scope + " x " + b.invariance_scope;
  d.sample_actor = [a, b](std::mt19937_64& rng) {
    A x = a.sample_actor(rng);
    return P{std::move(x), b.sample_actor(rng)};
  };
  d.act = [a, b](const P& s, const P& x) { return P{a.act(s.first, x.first), b.act(s.second, x.second)}; };
  return d;
}

template <class E>
NormEval<E> dirac_norm(const GroupDomain<E>& domain) {
  NormEval<E> out;
  out.domain = domain;
  out.tag = "dirac";
  auto is_id = domain.is_identity;
  out.evaluate = [is_id](const E& g) { return mpq_class(is_id(g) ? 0 : 1); };
  return out;
}

template <class E>
NormEval<E> bounded_transform(const NormEval<E>& norm) {
  NormEval<E> out = norm;
  out.tag = "bounded(" + norm.tag + ")";
  auto f = norm.evaluate;
  out.evaluate = [f](const E& g) {
    mpq_class x = f(g);
    mpq_class r = x / (1 + x);
    r.canonicalize();
    return r;
  };
  return out;
}

template <class A, class B>
NormEval<std::pair<A, B>> product_sum_norm(const NormEval<A>& a, const NormEval<B>& b) {
  NormEval<std::pair<A, B>> out;
  out.domain = product_domain(a.domain, b.domain);
  out.tag = "product_sum(" + a.tag + ", " + b.tag + ")";
  auto fa = a.evaluate;
  auto fb = b.evaluate;
  out.evaluate = [fa, fb](const std::pair<A, B>& g) { return mpq_class(fa(g.first) + fb(g.second)); };
  return out;
}

template <class E>
AxiomReport axiom_harness(const NormEval<E>& norm, std::size_t samples, std::uint64_t seed) {
  const auto& d = norm.domain;
  std::mt19937_64 rng(seed);
  AxiomReport report;
  report.tag = norm.tag;
  AxiomLine positivity, definiteness, symmetry, triangle, invariance;
  positivity.name = "positivity";
  definiteness.name = "definiteness";
  symmetry.name = "symmetry";
  triangle.name = "triangle";
  invariance.name = "invariance";
  auto flag = [&](AxiomLine& line, bool ok, const std::string& what) {
    ++line.samples;
    if (ok) return;
    if (line.violations++ == 0) line.first_violation = what;
  };
  flag(definiteness, norm(d.identity()) == 0, "identity");
  for (std::size_t k = 0; k < samples; ++k) {
    const E g = d.sample(rng);
    const E h = d.sample(rng);
    const E s = d.sample_actor(rng);
    const mpq_class ng = norm(g), nh = norm(h);
    flag(positivity, ng >= 0, d.show(g));
    flag(definiteness, (ng == 0) == d.is_identity(g), d.show(g));
    flag(symmetry, norm(d.inv(g)) == ng, d.show(g));
    flag(triangle, norm(d.mul(g, h)) <= ng + nh, d.show(g) + " ; " + d.show(h));
    flag(invariance, norm(d.act(s, g)) == ng, d.show(s) + " . " + d.show(g));
  }
  report.lines = {positivity, definiteness, symmetry, triangle, invariance};
  return report;
}

}  // namespace qwidth
