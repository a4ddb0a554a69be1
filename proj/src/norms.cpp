#include "qwidth/norms.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qwidth {

namespace {

RingElement rand_entry(std::mt19937_64& rng, const RingElement& step, unsigned min_power, unsigned max_power) {
  std::uniform_int_distribution<long> coef(-2, 2);
  std::uniform_int_distribution<unsigned> power(min_power, max_power);
  return RingElement::from_integer(step.ring(), coef(rng)) * step.pow(power(rng));
}

SqMatrix random_product(std::mt19937_64& rng, const RingSpec& ring, std::size_t n, int length,
                        const RingElement& step, unsigned min_power, unsigned max_power) {
  std::uniform_int_distribution<std::size_t> idx(1, n);
  SqMatrix g = SqMatrix::identity(ring, n);
  for (int k = 0; k < length; ++k) {
    const std::size_t i = idx(rng);
    std::size_t j = idx(rng);
    while (j == i) j = idx(rng);
    g = g * elementary(i, j, rand_entry(rng, step, min_power, max_power), n);
  }
  return g;
}

GroupDomain<SqMatrix> conjugation_frame(const RingSpec& ring, std::size_t n) {
  GroupDomain<SqMatrix> d;
  d.identity = [ring, n] { return SqMatrix::identity(ring, n); };
  d.mul = [](const SqMatrix& a, const SqMatrix& b) { return a * b; };
  d.inv = [](const SqMatrix& a) { return mat_inv(a); };
  d.is_identity = [](const SqMatrix& a) { return a.is_identity(); };
  d.equal = [](const SqMatrix& a, const SqMatrix& b) { return a == b; };
  d.show = [](const SqMatrix& a) { return a.key(); };
  d.act = [](const SqMatrix& s, const SqMatrix& g) { return conjugate(g, s); };
  return d;
}

mpq_class padic_abs(const mpz_class& x, const mpz_class& p) {
  if (x == 0) return 0;
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), valuation(x, p));
  return mpq_class(mpz_class(1), pk);
}

mpq_class inverse_power_of_two(unsigned e) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, e);
  return mpq_class(mpz_class(1), d);
}

std::string show_z2(const Z2& v) { return "(" + v[0].get_str() + "," + v[1].get_str() + ")"; }

// (x, y) -> (x + t y, y) followed by (x, y) -> (x, y + u x), for s = (t, u).
Z2 transvect(const Z2& s, const Z2& v) {
  Z2 out{v[0] + s[0] * v[1], v[1]};
  out[1] += s[1] * out[0];
  return out;
}

}  // namespace

GroupDomain<SqMatrix> matrix_domain(const RingSpec& ring, std::size_t n, const RingElement& step,
                                    unsigned min_power, unsigned max_power, int length) {
  GroupDomain<SqMatrix> d = conjugation_frame(ring, n);
  d.name = "SL" + std::to_string(n) + "(" + ring.descriptor() + ")";
  d.invariance_scope = d.name;
  d.sample = [ring, n, step, min_power, max_power, length](std::mt19937_64& rng) {
    if (rng() % 16 == 0) return SqMatrix::identity(ring, n);
    SqMatrix g = random_product(rng, ring, n, length, step, min_power, max_power);
    if (n % 2 == 0 && rng() % 4 == 0) {
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) g.at(i, j) = -g(i, j);
    }
    return g;
  };
  const RingElement one = RingElement::from_integer(ring, 1);
  d.sample_actor = [ring, n, one, length](std::mt19937_64& rng) {
    return random_product(rng, ring, n, length, one, 0, 1);
  };
  return d;
}

GroupDomain<TableElement> table_domain(std::shared_ptr<const FiniteGroupTable> table) {
  GroupDomain<TableElement> d;
  d.name = "SL" + std::to_string(table->dim()) + "(" + table->ring().descriptor() + ")";
  d.invariance_scope = d.name;
  d.identity = [table] { return table->identity(); };
  d.mul = [table](TableElement a, TableElement b) { return table->mul(a, b); };
  d.inv = [table](TableElement a) { return table->inv(a); };
  d.is_identity = [table](TableElement a) { return a == table->identity(); };
  d.equal = [](TableElement a, TableElement b) { return a == b; };
  d.sample = [table](std::mt19937_64& rng) {
    return std::uniform_int_distribution<TableElement>(0, table->order() - 1)(rng);
  };
  d.show = [table](TableElement a) { return table->element(a).key(); };
  d.sample_actor = d.sample;
  d.act = [table](TableElement s, TableElement g) { return table->conjugate(g, s); };
  return d;
}

GroupDomain<Z2> z2_domain(const mpz_class& gen, long box) {
  GroupDomain<Z2> d;
  d.name = "(" + gen.get_str() + ")^2";
  d.invariance_scope = "E(2, (" + gen.get_str() + "), Z)";
  d.identity = [] { return Z2{0, 0}; };
  d.mul = [](const Z2& a, const Z2& b) { return Z2{a[0] + b[0], a[1] + b[1]}; };
  d.inv = [](const Z2& a) { return Z2{-a[0], -a[1]}; };
  d.is_identity = [](const Z2& a) { return a[0] == 0 && a[1] == 0; };
  d.equal = [](const Z2& a, const Z2& b) { return a == b; };
  auto coordinate = [gen, box](std::mt19937_64& rng) {
    const long c = std::uniform_int_distribution<long>(-box, box)(rng);
    const unsigned k = std::uniform_int_distribution<unsigned>(0, 6)(rng);
    return mpz_class(gen * c) << k;
  };
  d.sample = [coordinate](std::mt19937_64& rng) {
    if (rng() % 16 == 0) return Z2{0, 0};
    mpz_class x = coordinate(rng);
    return Z2{x, coordinate(rng)};
  };
  d.show = show_z2;
  d.sample_actor = d.sample;
  d.act = transvect;
  return d;
}

mpq_class FiltrationChain::value_at(unsigned level) const {
  if (values.empty()) return inverse_power_of_two(level);
  if (level >= values.size())
    throw Error(ErrorKind::CapAmbiguous, "no chain value for level " + std::to_string(level));
  return values[level];
}

NormEval<SqMatrix> filtration_norm(const FiltrationChain& chain) {
  for (std::size_t k = 0; k < chain.values.size(); ++k) {
    if (chain.values[k] <= 0 || (k > 0 && chain.values[k] >= chain.values[k - 1]))
      throw Error(ErrorKind::ParseError, "chain values must be positive and strictly decreasing");
  }
  NormEval<SqMatrix> out;
  out.domain = matrix_domain(chain.ring, chain.n, chain.ideal.generator());
  out.tag = "filtration";
  out.params = {{"ideal", chain.ideal.to_string()}, {"cap", std::to_string(chain.cap)}};
  out.evaluate = [chain](const SqMatrix& g) -> mpq_class {
    const CongruenceDatum d = congruence_level(g, chain.ideal, chain.cap);
    if (d.kind == LevelKind::Identity) return 0;
    if (d.kind == LevelKind::CapExceeded)
      throw Error(ErrorKind::CapAmbiguous, "level of " + g.key() + " reaches the cap " + std::to_string(chain.cap));
    return chain.value_at(d.level);
  };
  return out;
}

NormEval<SqMatrix> singular_extension(const NormEval<SqMatrix>& inner, std::function<bool(const SqMatrix&)> in_n,
                                      const GroupDomain<SqMatrix>& ambient, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 256; ++k) {
    const SqMatrix g = inner.domain.sample(rng);
    if (in_n(g) && inner(g) > 1)
      throw Error(ErrorKind::InnerUnbounded, "inner value " + inner(g).get_str() + " at " + g.key());
  }
  NormEval<SqMatrix> out;
  out.domain = ambient;
  out.tag = "singular(" + inner.tag + ")";
  auto f = inner.evaluate;
  out.evaluate = [f, in_n](const SqMatrix& g) { return in_n(g) ? f(g) : mpq_class(1); };
  return out;
}

NormEval<SqMatrix> quotient_norm(const NormEval<SqMatrix>& norm, const std::vector<SqMatrix>& central_subgroup,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (const auto& a : central_subgroup) {
    if (!is_central(a)) throw Error(ErrorKind::NotCentral, a.key());
    for (int k = 0; k < 32; ++k) {
      const SqMatrix g = norm.domain.sample(rng);
      if (!(a * g == g * a)) throw Error(ErrorKind::NotCentral, a.key());
    }
  }
  NormEval<SqMatrix> out = norm;
  out.tag = "quotient(" + norm.tag + ")";
  out.params["subgroup_order"] = std::to_string(central_subgroup.size());
  const auto a = central_subgroup;
  out.domain.is_identity = [a](const SqMatrix& g) {
    return g.is_identity() || std::any_of(a.begin(), a.end(), [&](const SqMatrix& x) { return x == g; });
  };
  auto f = norm.evaluate;
  out.evaluate = [f, a](const SqMatrix& g) {
    mpq_class best = f(g);
    for (const auto& x : a) best = std::min(best, f(g * x));
    return best;
  };
  return out;
}

NormEval<SqMatrix> average_norm(const NormEval<SqMatrix>& norm, const std::vector<SqMatrix>& reps, std::size_t index,
                                std::function<bool(const SqMatrix&)> in_n, const GroupDomain<SqMatrix>& ambient) {
  if (reps.size() != index || index == 0)
    throw Error(ErrorKind::BadTransversal,
                std::to_string(reps.size()) + " representatives for index " + std::to_string(index));
  std::vector<SqMatrix> inverses;
  for (const auto& r : reps) inverses.push_back(mat_inv(r));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b)
      if (in_n(inverses[a] * reps[b]))
        throw Error(ErrorKind::BadTransversal, "representatives " + std::to_string(a + 1) + " and " +
                                                   std::to_string(b + 1) + " share a coset");
  NormEval<SqMatrix> out = norm;
  out.tag = "average(" + norm.tag + ")";
  out.params["index"] = std::to_string(index);
  out.domain.invariance_scope = ambient.invariance_scope;
  out.domain.sample_actor = ambient.sample;
  out.domain.act = [](const SqMatrix& s, const SqMatrix& g) { return conjugate(g, s); };
  auto f = norm.evaluate;
  out.evaluate = [f, reps, inverses](const SqMatrix& g) {
    mpq_class sum = 0;
    for (std::size_t k = 0; k < reps.size(); ++k) sum += f(reps[k] * g * inverses[k]);
    sum /= static_cast<unsigned long>(reps.size());
    sum.canonicalize();
    return sum;
  };
  return out;
}

LevelTwoModel level_two_model(std::size_t n) {
  const RingSpec z4 = RingSpec::integers_mod(4);
  const RingElement one = RingElement::from_integer(z4, 1);
  const RingElement two = RingElement::from_integer(z4, 2);
  const Ideal q = Ideal::principal(two);
  LevelTwoModel m;
  m.in_n = [q](const SqMatrix& g) { return is_congruent_to_identity(g, q); };

  m.base.tag = "weighted_parity";
  m.base.domain = conjugation_frame(z4, n);
  m.base.domain.name = "Gamma(2) in SL" + std::to_string(n) + "(Z/4)";
  m.base.domain.invariance_scope = m.base.domain.name;
  m.base.domain.sample = [z4, n](std::mt19937_64& rng) {
    SqMatrix g = SqMatrix::identity(z4, n);
    unsigned trace = 0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        unsigned bit = static_cast<unsigned>(rng() & 1);
        if (i == n && j == n) bit = trace % 2;  // det(I + 2X) = 1 + 2 tr X mod 4
        if (i == j) trace += bit;
        g.at(i, j) += RingElement::from_integer(z4, 2 * bit);
      }
    return g;
  };
  m.base.domain.sample_actor = m.base.domain.sample;
  m.base.evaluate = [n](const SqMatrix& g) {
    unsigned long total = 0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        const long r = g(i, j).value().get_si() - (i == j ? 1 : 0);
        if (((r % 4) + 4) % 4 == 2) total += (i - 1) * n + j;
      }
    return mpq_class(total);
  };

  m.ambient = matrix_domain(z4, n, one, 0, 0);
  const auto base = enumerate_sl(n, RingSpec::integers_mod(2));
  const SqMatrix fix = [&] {
    SqMatrix d = SqMatrix::identity(z4, n);
    d.at(1, 1) = RingElement::from_integer(z4, 3);
    return d;
  }();
  for (std::size_t k = 0; k < base.order(); ++k) {
    const SqMatrix g = base.element(k);
    SqMatrix lift(z4, n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) lift.at(i, j) = RingElement::from_integer(z4, g(i, j).value());
    if (!determinant(lift).is_one()) lift = lift * fix;
    m.reps.push_back(lift);
  }
  return m;
}

std::vector<TableElement> conjugation_closure(const FiniteGroupTable& table,
                                              const std::vector<TableElement>& generators) {
  std::set<TableElement> out;
  for (TableElement g : generators)
    for (TableElement s = 0; s < table.order(); ++s) {
      out.insert(table.conjugate(g, s));
      out.insert(table.conjugate(table.inv(g), s));
    }
  return {out.begin(), out.end()};
}

std::vector<TableElement> elementary_conjugates(const FiniteGroupTable& table) {
  std::vector<TableElement> gens;
  const RingElement one = RingElement::from_integer(table.ring(), 1);
  for (const auto& [i, j] : all_targets(table.dim())) gens.push_back(*table.index_of(elementary(i, j, one, table.dim())));
  return conjugation_closure(table, gens);
}

namespace {

// Breadth-first distances from the identity; stops once `stop` is reached or
// `budget` elements have been visited.
std::vector<std::int64_t> word_distances(const FiniteGroupTable& table, const std::vector<TableElement>& closure,
                                         std::optional<TableElement> stop, std::size_t budget, std::size_t& frontier,
                                         std::size_t& visited) {
  std::vector<std::int64_t> dist(table.order(), -1);
  std::deque<TableElement> queue{table.identity()};
  dist[table.identity()] = 0;
  visited = 1;
  while (!queue.empty()) {
    const TableElement x = queue.front();
    if ((stop && dist[*stop] >= 0) || visited >= budget) break;
    queue.pop_front();
    for (TableElement s : closure) {
      const TableElement y = table.mul(x, s);
      if (dist[y] >= 0) continue;
      dist[y] = dist[x] + 1;
      ++visited;
      queue.push_back(y);
    }
  }
  frontier = queue.size();
  return dist;
}

}  // namespace

WordNormResult word_norm(const FiniteGroupTable& table, const std::vector<TableElement>& generators, TableElement g,
                         std::size_t budget) {
  const auto closure = conjugation_closure(table, generators);
  if (closure.size() > budget)
    throw Error(ErrorKind::BudgetExceeded, "conjugation closure has " + std::to_string(closure.size()) + " elements");
  WordNormResult r;
  const auto dist = word_distances(table, closure, g, budget, r.frontier, r.visited);
  if (dist[g] >= 0) {
    r.value = static_cast<std::uint64_t>(dist[g]);
  } else if (r.frontier == 0) {
    throw Error(ErrorKind::Unreachable, table.element(g).key() + " is outside the generated subgroup");
  }
  return r;
}

NormEval<TableElement> word_norm_eval(std::shared_ptr<const FiniteGroupTable> table,
                                      const std::vector<TableElement>& generators) {
  const auto closure = conjugation_closure(*table, generators);
  std::size_t frontier = 0, visited = 0;
  auto dist = std::make_shared<const std::vector<std::int64_t>>(
      word_distances(*table, closure, std::nullopt, table->order() + 1, frontier, visited));
  if (visited != table->order())
    throw Error(ErrorKind::Unreachable, "generators reach " + std::to_string(visited) + " of " +
                                            std::to_string(table->order()) + " elements");
  NormEval<TableElement> out;
  out.domain = table_domain(table);
  out.tag = "word";
  out.params["generators"] = std::to_string(closure.size());
  out.params["max"] = std::to_string(*std::max_element(dist->begin(), dist->end()));
  out.evaluate = [dist](TableElement g) { return mpq_class(static_cast<unsigned long>((*dist)[g])); };
  return out;
}

NormEval<Z2> z2_mixed_norm(const mpz_class& p) {
  if (!is_prime(p)) throw Error(ErrorKind::UnsupportedRing, p.get_str() + " is not prime");
  NormEval<Z2> out;
  out.domain = z2_domain(1);
  out.domain.invariance_scope = "(x, y) -> (x + t y, y)";
  out.domain.sample_actor = [](std::mt19937_64& rng) {
    return Z2{std::uniform_int_distribution<long>(-20, 20)(rng), 0};
  };
  out.tag = "z2_mixed";
  out.params["p"] = p.get_str();
  out.evaluate = [p](const Z2& v) {
    mpq_class x = padic_abs(v[0], p) / 2;
    x.canonicalize();
    return std::max(x, mpq_class(abs(v[1])));
  };
  return out;
}

NormEval<Z2> padic_sup_norm(const mpz_class& p) {
  if (!is_prime(p)) throw Error(ErrorKind::UnsupportedRing, p.get_str() + " is not prime");
  NormEval<Z2> out;
  out.domain = z2_domain(p);
  out.tag = "padic_sup";
  out.params["p"] = p.get_str();
  out.evaluate = [p](const Z2& v) { return std::max(padic_abs(v[0], p), padic_abs(v[1], p)); };
  return out;
}

ShrinkResult shrink_ideal(const NormEval<Z2>& norm, const mpz_class& gen, const mpq_class& epsilon,
                          std::size_t bound) {
  std::size_t tried = 0;
  for (long r = 1;; ++r)
    for (long a = -r; a <= r; ++a)
      for (long b = -r; b <= r; ++b) {
        if (a == 0 || std::max(std::labs(a), std::labs(b)) != r) continue;
        if (tried++ >= bound)
          throw Error(ErrorKind::NoSmallVector,
                      "no pair with 6 ||(x, y)|| <= " + epsilon.get_str() + " among " + std::to_string(bound));
        const Z2 v{gen * a, gen * b};
        if (6 * norm(v) <= epsilon) {
          mpz_class cube = abs(v[0]) * v[0] * v[0];
          return {v, abs(cube), tried};
        }
      }
}

std::size_t epsilon_ball_violations(const NormEval<Z2>& norm, const mpz_class& ideal_gen, const mpq_class& epsilon,
                                    std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> c(-1000, 1000);
  std::size_t bad = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Z2 v{ideal_gen * c(rng), ideal_gen * c(rng)};
    if (norm(v) > epsilon) ++bad;
  }
  return bad;
}

bool AxiomReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const AxiomLine& l) { return l.violations == 0; });
}

std::size_t AxiomReport::violations(const std::string& axiom) const {
  for (const auto& l : lines)
    if (l.name == axiom) return l.violations;
  throw Error(ErrorKind::InternalError, "no axiom " + axiom);
}

std::string AxiomReport::to_text() const {
  std::ostringstream os;
  for (const auto& l : lines) {
    os << "axiom=" << l.name << " samples=" << l.samples << " violations=" << l.violations << "\n";
    if (l.violations > 0) os << "  first: " << l.first_violation << "\n";
  }
  return os.str();
}

NormConfig NormConfig::parse(std::string_view text) {
  NormConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ParseError, "config line " + std::to_string(number) + ": expected key=value");
    c.entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return c;
}

std::string NormConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second;
}

const std::string& NormConfig::require(const std::string& key) const {
  const auto it = entries.find(key);
  if (it == entries.end()) throw Error(ErrorKind::ParseError, "config is missing '" + key + "'");
  return it->second;
}

std::string NormRun::to_text() const {
  std::string out = header + "\n";
  if (value) out += "value=" + *value + "\n";
  if (report) out += report->to_text();
  return out;
}

namespace {

template <class E>
NormRun finish(const NormEval<E>& norm, const std::function<E(const std::string&)>& parse,
               const std::optional<std::string>& element, std::size_t samples, std::uint64_t seed) {
  NormRun run;
  run.header = "norm tag=" + norm.tag + " domain=" + norm.domain.name + " seed=" + std::to_string(seed);
  for (const auto& [k, v] : norm.params) run.header += " " + k + "=" + v;
  if (element) {
    if (!parse) throw Error(ErrorKind::UsageError, "evaluation is not supported for " + norm.tag);
    run.value = norm(parse(*element)).get_str();
  }
  if (samples > 0) run.report = axiom_harness(norm, samples, seed);
  return run;
}

FiltrationChain chain_from(const NormConfig& c) {
  FiltrationChain chain;
  chain.ring = RingSpec::parse(c.get("ring", "Z"));
  chain.n = std::stoul(c.get("n", "3"));
  chain.ideal = Ideal::parse(chain.ring, c.get("ideal", "2"));
  chain.cap = static_cast<unsigned>(std::stoul(c.get("cap", std::to_string(kDefaultLevelCap))));
  std::istringstream values(c.get("values", ""));
  std::string v;
  while (std::getline(values, v, ',')) {
    mpq_class q(v);
    q.canonicalize();
    chain.values.push_back(q);
  }
  return chain;
}

std::shared_ptr<const FiniteGroupTable> table_from(const std::string& descriptor) {
  const auto [n, ring] = parse_group_descriptor(descriptor);
  return std::make_shared<const FiniteGroupTable>(enumerate_sl(n, ring));
}

}  // namespace

namespace {

NormRun run_norm_config_unchecked(const NormConfig& config, const std::optional<std::string>& element,
                                  std::size_t samples, std::uint64_t seed) {
  const std::string& tag = config.require("tag");
  const std::function<SqMatrix(const std::string&)> parse_matrix = [](const std::string& s) {
    return SqMatrix::parse_text(s);
  };
  const auto parse_table = [](std::shared_ptr<const FiniteGroupTable> t) {
    return std::function<TableElement(const std::string&)>([t](const std::string& s) {
      const auto k = t->index_of(SqMatrix::parse_text(s));
      if (!k) throw Error(ErrorKind::ParseError, "matrix is not in the group");
      return *k;
    });
  };
  const std::function<Z2(const std::string&)> parse_z2 = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == ' ' || ch == '\n' || ch == '\r'; }),
            s.end());
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "expected x,y");
    try {
      return Z2{mpz_class(s.substr(0, comma)), mpz_class(s.substr(comma + 1))};
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::ParseError, "expected x,y");
    }
  };

  if (tag == "dirac") {
    if (config.entries.count("group")) {
      const auto t = table_from(config.require("group"));
      return finish(dirac_norm(table_domain(t)), parse_table(t), element, samples, seed);
    }
    const FiltrationChain chain = chain_from(config);
    return finish(dirac_norm(matrix_domain(chain.ring, chain.n, RingElement::from_integer(chain.ring, 1))),
                  parse_matrix, element, samples, seed);
  }
  if (tag == "filtration") return finish(filtration_norm(chain_from(config)), parse_matrix, element, samples, seed);
  if (tag == "bounded")
    return finish(bounded_transform(filtration_norm(chain_from(config))), parse_matrix, element, samples, seed);
  if (tag == "singular") {
    const FiltrationChain chain = chain_from(config);
    NormEval<SqMatrix> inner = bounded_transform(filtration_norm(chain));
    const RingElement gen = chain.ideal.generator();
    inner.domain = matrix_domain(chain.ring, chain.n, gen, 1, 4);
    const Ideal q = chain.ideal;
    const auto in_n = [q](const SqMatrix& g) { return is_congruent_to_identity(g, q); };
    return finish(singular_extension(inner, in_n, matrix_domain(chain.ring, chain.n, gen, 0, 4), seed), parse_matrix,
                  element, samples, seed);
  }
  if (tag == "quotient") {
    const FiltrationChain chain = chain_from(config);
    std::vector<SqMatrix> a{SqMatrix::identity(chain.ring, chain.n)};
    if (chain.n % 2 == 0) {
      SqMatrix minus = SqMatrix::identity(chain.ring, chain.n);
      for (std::size_t i = 1; i <= chain.n; ++i) minus.at(i, i) = RingElement::from_integer(chain.ring, -1);
      a.push_back(minus);
    }
    return finish(quotient_norm(filtration_norm(chain), a, seed), parse_matrix, element, samples, seed);
  }
  if (tag == "average") {
    const LevelTwoModel m = level_two_model(std::stoul(config.get("n", "3")));
    return finish(average_norm(m.base, m.reps, m.reps.size(), m.in_n, m.ambient), parse_matrix, element, samples,
                  seed);
  }
  if (tag == "word") {
    const auto t = table_from(config.get("group", "SL2,F3"));
    return finish(word_norm_eval(t, elementary_conjugates(*t)), parse_table(t), element, samples, seed);
  }
  if (tag == "product_sum") {
    const auto t1 = table_from(config.get("group", "SL2,F3"));
    const auto t2 = table_from(config.get("group2", "SL2,F2"));
    return finish(product_sum_norm(word_norm_eval(t1, elementary_conjugates(*t1)), dirac_norm(table_domain(t2))),
                  std::function<std::pair<TableElement, TableElement>(const std::string&)>{}, element, samples,
                  seed);
  }
  if (tag == "z2_mixed") return finish(z2_mixed_norm(mpz_class(config.get("p", "2"))), parse_z2, element, samples, seed);
  if (tag == "padic_sup")
    return finish(padic_sup_norm(mpz_class(config.get("p", "2"))), parse_z2, element, samples, seed);
  throw Error(ErrorKind::ParseError, "unknown norm tag '" + tag + "'");
}

}  // namespace

NormRun run_norm_config(const NormConfig& config, const std::optional<std::string>& element, std::size_t samples,
                        std::uint64_t seed) {
  try {
    return run_norm_config_unchecked(config, element, samples, seed);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::ParseError, std::string("bad number in config: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw Error(ErrorKind::ParseError, std::string("number out of range in config: ") + e.what());
  }
}

}  // namespace qwidth
