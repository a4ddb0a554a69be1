// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "qwidth/census.hpp"
#include "qwidth/elemgen.hpp"
#include "qwidth/norms.hpp"
#include "qwidth/widthred.hpp"
#include "test_support.hpp"

using namespace qwidth;
using qwidth::testing::elt;
using qwidth::testing::random_elementary_product;
using qwidth::testing::z;

namespace {

const RingSpec Z = RingSpec::integers();

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::cout << "criterion " << number << " [" << (v.pass ? "PASS" : "FAIL") << "] " << title << ": "
            << v.note.str() << "time=" << secs << "s" << std::endl;
}

// Exactly I + x e_ij with x != 0 in q.
bool lands_in_root(const SqMatrix& g, std::size_t i, std::size_t j, const Ideal& q) {
  for (std::size_t a = 1; a <= g.dim(); ++a)
    for (std::size_t b = 1; b <= g.dim(); ++b) {
      if (a == i && b == j) continue;
      if (!(g(a, b) == elt(g.ring(), a == b ? 1 : 0))) return false;
    }
  return !g(i, j).is_zero() && q.contains(g(i, j));
}

bool trace_valid(const ReductionTrace& t) {
  try {
    replay_trace(t);
  } catch (const Error&) {
    return false;
  }
  const std::string text = t.serialize();
  if (ReductionTrace::parse(text).serialize() != text) return false;
  return evaluate_word(expand_trace_word(t), t.input) == t.output();
}

std::uint64_t prime_field_sl_order(std::size_t n, std::uint64_t p) {
  std::uint64_t pn = 1, gl = 1, pk = 1;
  for (std::size_t k = 0; k < n; ++k) pn *= p;
  for (std::size_t k = 0; k < n; ++k, pk *= p) gl *= pn - pk;
  return gl / (p - 1);
}

}  // namespace

int main() {
  criterion(1, "width budget over SL3(F2), every non-central element and target", [](Verdict& v) {
    const auto f2 = RingSpec::integers_mod(2);
    const auto table = enumerate_sl(3, f2);
    const auto census = width_census(table, Ideal::unit(f2));
    std::size_t pairs = 0;
    for (const auto& r : census.rows)
      for (const auto& t : r.targets) {
        ++pairs;
        v.require(t.min_ops <= 9, "min_ops > 9 at sigma " + std::to_string(r.sigma));
        v.require(t.min_len <= 512, "min_len > 512 at sigma " + std::to_string(r.sigma));
      }
    v.require(census.unreachable.empty(), "unreachable elements");
    v.require(census.rows.size() + census.skipped_central == 168, "element count");
    v.require(pairs == census.rows.size() * 6, "target count");
    v.note << "sigmas=" << census.rows.size() << " pairs=" << pairs << " max_ops=" << census.max_ops
           << " max_len=" << census.max_len << " ";
  });

  criterion(2, "randomized pipeline on Gamma(2) in SL3(Z), 100 matrices x 6 targets", [](Verdict& v) {
    std::mt19937_64 rng(20240101);
    const Ideal two = Ideal::principal(z(2));
    std::size_t runs = 0, max_steps = 0;
    std::uint64_t max_len = 0;
    for (int k = 0; k < 100; ++k) {
      SqMatrix sigma = random_elementary_product(rng, Z, 3, 10, 2);
      while (is_central(sigma)) sigma = random_elementary_product(rng, Z, 3, 10, 2);
      for (const auto& [i, j] : all_targets(3)) {
        const ReductionTrace t = reduce_full(sigma, two, i, j, k);
        ++runs;
        max_steps = std::max(max_steps, t.steps.size());
        max_len = std::max(max_len, t.word_length());
        const std::string where = "sigma " + sigma.key() + " target " + std::to_string(i) + "," + std::to_string(j);
        v.require(trace_valid(t), "replay " + where);
        v.require(t.steps.size() <= 9 && t.word_length() <= 512, "budget " + where);
        v.require(lands_in_root(t.output(), i, j, two), "output " + where);
        v.require(t.count_tagged("step1") <= 4 && t.count_tagged("step2") <= 1 && t.count_tagged("step3") <= 1 &&
                      t.count_tagged("step4") <= 3,
                  "stage bounds " + where);
      }
    }
    v.note << "runs=" << runs << " max_steps=" << max_steps << " max_len=" << max_len << " ";
  });

  criterion(3, "branch coverage of every tagged case", [](Verdict& v) {
    std::set<std::string> seen;
    auto collect = [&](const ReductionTrace& t) {
      v.require(trace_valid(t), "invalid trace from " + t.input.key());
      for (const auto& s : t.steps) seen.insert(s.tag);
    };
    const Ideal two = Ideal::principal(z(2));
    collect(reduce_full(SqMatrix::from_integers(Z, {{-1, 2, 4}, {0, -1, 0}, {0, 2, 1}}), two, 1, 2));
    const auto f7 = RingSpec::integers_mod(7);
    collect(reduce_full(SqMatrix::from_integers(f7, {{2, 3, 0}, {0, 2, 0}, {0, 0, 2}}), Ideal::unit(f7), 2, 1));
    const auto f2 = RingSpec::integers_mod(2);
    const auto table = enumerate_sl(3, f2);
    for (std::size_t k = 0; k < table.order(); ++k)
      if (!table.is_central(k)) collect(reduce_full(table.element(k), Ideal::unit(f2), 1, 2));
    for (const auto& [k, l] : all_targets(3))
      for (const auto& [i, j] : all_targets(3)) collect(relocate_elementary(elementary(k, l, z(2), 3), i, j, two));
    const auto z13 = RingSpec::integers_mod(13);
    const SqMatrix s13 = SqMatrix::from_integers(z13, {{1, 1}, {1, 2}});
    collect(unit_trick_se4(s13, Ideal::unit(z13), Se4Side::E12));
    collect(unit_trick_se4(s13, Ideal::unit(z13), Se4Side::E21));
    const std::vector<std::string> required{"step1.case1.noncentral_block",
                                            "step1.case1.scalar_block",
                                            "step1.case2.rho_commutes",
                                            "step1.case2.rho_comm_tau",
                                            "step4.case1.same_col",
                                            "step4.case1.same_row",
                                            "step4.case2.distinct",
                                            "step4.case2.k_eq_j.h_eq_i",
                                            "step4.case2.k_eq_j.h_ne_i",
                                            "se4.e12",
                                            "se4.e21"};
    for (const auto& prefix : required) {
      bool hit = false;
      for (const auto& tag : seen) hit = hit || tag.starts_with(prefix);
      v.require(hit, "missing " + prefix);
    }
    v.note << "tags=" << seen.size() << " ";
  });

  criterion(4, "sum identity on 10^4 random tuples and symbolically", [](Verdict& v) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int k = 0; k < 10'000; ++k) {
      const long m = d(rng), a = d(rng), b = d(rng), c = d(rng), e = d(rng);
      const auto r = verify_sum_identity(m, a, b, c, e);
      v.require(r.holds, "tuple " + std::to_string(m));
      // Left-hand side from its defining entries, independently.
      v.require(r.lhs == SqMatrix::from_rows(Z, {{z(1 + m * m * a), z(m * b)}, {z(m * c), z(1 + m * m * e)}}),
                "lhs entries");
      SqMatrix sum(Z, 2);
      for (const auto& t : r.terms)
        for (std::size_t i = 1; i <= 2; ++i)
          for (std::size_t j = 1; j <= 2; ++j) sum.at(i, j) += t(i, j);
      v.require(sum == r.lhs && r.terms.size() == 5, "five-term sum");
    }
    for (const auto& s : sum_identity_symbolic_difference()) v.require(s == "0", "symbolic difference " + s);
    v.note << "tuples=10000 ";
  });

  criterion(5, "norm axioms for every construction, 10^3 samples each", [](Verdict& v) {
    const std::size_t n = 1000;
    std::vector<AxiomReport> reports;
    const auto f2 = std::make_shared<const FiniteGroupTable>(enumerate_sl(3, RingSpec::integers_mod(2)));
    const auto f3 = std::make_shared<const FiniteGroupTable>(enumerate_sl(2, RingSpec::integers_mod(3)));
    reports.push_back(axiom_harness(dirac_norm(table_domain(f2)), n, 1));
    FiltrationChain chain;
    const auto filtration = filtration_norm(chain);
    reports.push_back(axiom_harness(filtration, n, 2));
    const Ideal two = Ideal::principal(z(2));
    auto inner = bounded_transform(filtration);
    inner.domain = matrix_domain(Z, 3, z(2), 1, 4);
    reports.push_back(axiom_harness(
        singular_extension(inner, [two](const SqMatrix& g) { return is_congruent_to_identity(g, two); },
                           matrix_domain(Z, 3, z(2), 0, 4)),
        n, 3));
    FiltrationChain chain2;
    chain2.n = 2;
    SqMatrix minus = SqMatrix::identity(Z, 2);
    minus.at(1, 1) = z(-1);
    minus.at(2, 2) = z(-1);
    reports.push_back(axiom_harness(quotient_norm(filtration_norm(chain2), {SqMatrix::identity(Z, 2), minus}), n, 4));
    const LevelTwoModel model = level_two_model(3);
    reports.push_back(
        axiom_harness(average_norm(model.base, model.reps, model.reps.size(), model.in_n, model.ambient), n, 5));
    const auto word = word_norm_eval(f3, elementary_conjugates(*f3));
    reports.push_back(axiom_harness(product_sum_norm(word, dirac_norm(table_domain(f2))), n, 6));
    reports.push_back(axiom_harness(z2_mixed_norm(2), n, 7));
    reports.push_back(axiom_harness(word, n, 8));
    for (const auto& r : reports) {
      v.require(r.ok(), r.tag + "\n" + r.to_text());
      for (const auto& l : r.lines) v.require(l.samples >= n, r.tag + " sampled " + std::to_string(l.samples));
    }
    v.note << "constructions=" << reports.size() << " ";
  });

  criterion(6, "two inequalities for the 2-adic sup norm and ideal shrinking", [](Verdict& v) {
    const auto norm = padic_sup_norm(2);
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> c(-10'000, 10'000);
    for (int k = 0; k < 1000; ++k) {
      const mpz_class x = 2 * c(rng), y = 2 * c(rng), w = 2 * c(rng);
      v.require(norm(Z2{w * y, 0}) <= 2 * norm(Z2{x, y}), "first inequality");
      v.require(norm(Z2{0, w * x}) <= 2 * norm(Z2{x, y}), "second inequality");
    }
    for (const mpq_class eps : {mpq_class(1, 4), mpq_class(1, 16)}) {
      const auto r = shrink_ideal(norm, 2, eps, 100'000);
      v.require(6 * norm(r.witness) <= eps, "witness");
      std::size_t bad = 0;
      for (int k = 0; k < 1000; ++k)
        if (norm(Z2{r.generator * c(rng), r.generator * c(rng)}) > eps) ++bad;
      v.require(bad == 0, "ball check at " + eps.get_str());
      v.note << "eps=" << eps.get_str() << " ideal=(" << r.generator.get_str() << ") ";
    }
  });

  criterion(7, "elementary decomposition and factor-count totals", [](Verdict& v) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
      const SqMatrix g = random_elementary_product(rng, Z, 3, 12, 1, 4);
      v.require(multiply_factors(decompose_elementary(g).factors, Z, 3) == g, "remultiply " + g.key());
    }
    const auto z3 = RingSpec::integers_mod(3);
    const auto t = enumerate_sl(2, z3);
    for (std::size_t k = 0; k < t.order(); ++k)
      v.require(multiply_factors(decompose_elementary(t.element(k)).factors, z3, 2) == t.element(k), "SL2(Z/3)");
    for (const auto& [n, p] : std::vector<std::pair<std::size_t, std::uint64_t>>{{2, 2}, {2, 3}, {2, 5}, {3, 2}, {3, 3}}) {
      const auto census = factor_count_census(n, RingSpec::integers_mod(p));
      std::uint64_t total = 0;
      for (const auto& [count, freq] : census.histogram) total += freq;
      v.require(total == census.order && total == prime_field_sl_order(n, p),
                "totals for n=" + std::to_string(n) + " p=" + std::to_string(p));
    }
    v.note << "random=1000 exhaustive=" << t.order() << " ";
  });

  criterion(8, "census minima never exceed reduction ledgers", [](Verdict& v) {
    std::size_t compared = 0;
    const auto f2 = RingSpec::integers_mod(2);
    const auto t3 = enumerate_sl(3, f2);
    const WidthOracle oracle3(t3, Ideal::unit(f2));
    for (std::size_t k = 0; k < t3.order(); ++k) {
      if (t3.is_central(k)) continue;
      const auto minima = oracle3.run(k, all_targets(3));
      for (const auto& m : minima.targets) {
        const auto trace = reduce_full(t3.element(k), Ideal::unit(f2), m.i, m.j);
        v.require(m.min_ops <= trace.steps.size() && m.min_len <= trace.word_length(),
                  "SL3(F2) sigma " + std::to_string(k));
        ++compared;
      }
    }
    const auto f5 = RingSpec::integers_mod(5);
    const auto t2 = enumerate_sl(2, f5);
    const WidthOracle oracle2(t2, Ideal::unit(f5), ConjugatorGroup::Congruence);
    std::size_t se4_runs = 0;
    for (std::size_t k = 0; k < t2.order(); ++k) {
      if (t2.is_central(k)) continue;
      for (Se4Side side : {Se4Side::E12, Se4Side::E21}) {
        ReductionTrace trace = [&] {
          try {
            return unit_trick_se4(t2.element(k), Ideal::unit(f5), side);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoUnitFound) throw;
            return ReductionTrace{t2.element(k), Ideal::unit(f5), std::nullopt, SGroup::Congruence, 0, {}};
          }
        }();
        if (trace.steps.empty()) continue;
        ++se4_runs;
        const std::pair<std::size_t, std::size_t> target = side == Se4Side::E12 ? std::pair{1, 2} : std::pair{2, 1};
        const auto minima = oracle2.run(k, {target});
        v.require(minima.targets[0].min_ops <= trace.steps.size() &&
                      minima.targets[0].min_len <= trace.word_length(),
                  "SL2(F5) sigma " + std::to_string(k));
        ++compared;
      }
    }
    v.require(se4_runs > 0, "no se4 reduction succeeded over F5");
    v.note << "compared=" << compared << " se4_runs=" << se4_runs << " ";
  });

  return failures == 0 ? 0 : 1;
}
