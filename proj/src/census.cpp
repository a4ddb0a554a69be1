#include "qwidth/census.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace qwidth {

mpz_class sl_order(std::size_t n, const mpz_class& m) {
  mpz_class order;
  mpz_pow_ui(order.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(n * n - 1));
  auto apply = [&](const mpz_class& p) {
    for (std::size_t k = 2; k <= n; ++k) {
      mpz_class pk;
      mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
      order = order / pk * (pk - 1);
    }
  };
  mpz_class rest = m;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    apply(p);
  }
  if (rest > 1) apply(rest);
  return order;
}

namespace {

std::uint32_t residue_of(const RingElement& e, std::uint32_t m) {
  mpz_class v = e.value() % m;
  if (v < 0) v += m;
  return static_cast<std::uint32_t>(v.get_ui());
}

void raw_mul(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out, std::size_t n, std::uint64_t m) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s = (s + std::uint64_t{a[i * n + k]} * b[k * n + j]) % m;
      out[i * n + j] = static_cast<std::uint32_t>(s);
    }
}

std::uint32_t modulus_of(const RingSpec& ring) {
  if (ring.kind() != RingKind::IntegersMod)
    throw Error(ErrorKind::UnsupportedRing, "finite group tables need Z/m, got " + ring.descriptor());
  if (!ring.parameter().fits_uint_p() || ring.parameter() > 0xFFFFu)
    throw Error(ErrorKind::BudgetExceeded, "modulus too large for a finite group table");
  return static_cast<std::uint32_t>(ring.parameter().get_ui());
}

}  // namespace

std::string FiniteGroupTable::key_of(const std::uint32_t* entries) const {
  return std::string(reinterpret_cast<const char*>(entries), n_ * n_ * sizeof(std::uint32_t));
}

FiniteGroupTable FiniteGroupTable::generated_by(const std::vector<SqMatrix>& generators, std::uint64_t budget) {
  if (generators.empty()) throw Error(ErrorKind::DimensionMismatch, "no generators");
  FiniteGroupTable t;
  t.ring_ = generators.front().ring();
  t.n_ = generators.front().dim();
  t.m_ = modulus_of(t.ring_);
  const std::size_t nn = t.n_ * t.n_;

  std::vector<std::uint32_t> gens;
  for (const auto& g : generators) {
    if (!(g.ring() == t.ring_) || g.dim() != t.n_)
      throw Error(ErrorKind::MismatchedRings, "generators must share ring and size");
    for (std::size_t i = 1; i <= t.n_; ++i)
      for (std::size_t j = 1; j <= t.n_; ++j) gens.push_back(residue_of(g(i, j), t.m_));
  }
  const std::size_t gcount = generators.size();

  std::vector<std::uint32_t> id(nn, 0);
  for (std::size_t i = 0; i < t.n_; ++i) id[i * t.n_ + i] = 1 % t.m_;
  t.entries_ = id;
  t.index_.emplace(t.key_of(id.data()), 0);
  std::vector<std::uint32_t> prod(nn);
  for (std::size_t cur = 0; cur < t.index_.size(); ++cur) {
    for (std::size_t g = 0; g < gcount; ++g) {
      raw_mul(t.entries_.data() + cur * nn, gens.data() + g * nn, prod.data(), t.n_, t.m_);
      const bool inserted =
          t.index_.emplace(t.key_of(prod.data()), static_cast<std::uint32_t>(t.index_.size())).second;
      if (!inserted) continue;
      if (t.index_.size() > budget)
        throw Error(ErrorKind::BudgetExceeded, "group exceeds " + std::to_string(budget) + " elements");
      t.entries_.insert(t.entries_.end(), prod.begin(), prod.end());
    }
  }
  t.order_ = t.index_.size();
  t.identity_ = 0;
  t.finish(budget);
  return t;
}

void FiniteGroupTable::finish(std::uint64_t) {
  const std::size_t nn = n_ * n_;
  std::vector<std::uint32_t> prod(nn);
  if (order_ <= kTableLimit) {
    table_.resize(order_ * order_);
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b) {
        raw_mul(raw(a), raw(b), prod.data(), n_, m_);
        table_[a * order_ + b] = index_.at(key_of(prod.data()));
      }
  }
  inverse_.assign(order_, 0);
  std::vector<bool> done(order_, false);
  for (std::size_t a = 0; a < order_; ++a) {
    if (done[a]) continue;
    // Walk the cyclic group of a; the element before the identity is a^-1.
    std::size_t prev = a, cur = a;
    while (cur != identity_) {
      prev = cur;
      cur = mul(cur, a);
    }
    inverse_[a] = prev;
    inverse_[prev] = a;
    done[a] = done[prev] = true;
  }
  central_.assign(order_, false);
  for (std::size_t k = 0; k < order_; ++k) {
    const std::uint32_t* e = raw(k);
    bool scalar = true;
    for (std::size_t i = 0; i < n_ && scalar; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (e[i * n_ + j] != (i == j ? e[0] : 0)) {
          scalar = false;
          break;
        }
    central_[k] = scalar;
    if (scalar) center_.push_back(k);
  }
}

SqMatrix FiniteGroupTable::element(std::size_t k) const {
  SqMatrix g(ring_, n_);
  const std::uint32_t* e = raw(k);
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= n_; ++j) g.at(i, j) = RingElement::from_integer(ring_, e[(i - 1) * n_ + j - 1]);
  return g;
}

std::optional<std::size_t> FiniteGroupTable::index_of_raw(const std::uint32_t* entries) const {
  const auto it = index_.find(key_of(entries));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FiniteGroupTable::index_of(const SqMatrix& g) const {
  if (!(g.ring() == ring_) || g.dim() != n_) return std::nullopt;
  std::vector<std::uint32_t> e;
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= n_; ++j) e.push_back(residue_of(g(i, j), m_));
  return index_of_raw(e.data());
}

std::size_t FiniteGroupTable::mul(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * order_ + b];
  std::array<std::uint32_t, 64> prod{};
  std::vector<std::uint32_t> big;
  std::uint32_t* out = prod.data();
  if (n_ * n_ > prod.size()) {
    big.resize(n_ * n_);
    out = big.data();
  }
  raw_mul(raw(a), raw(b), out, n_, m_);
  return index_.at(key_of(out));
}

bool FiniteGroupTable::in_congruence(std::size_t k, std::uint32_t ideal_gen) const {
  const std::uint32_t d = std::gcd(ideal_gen, m_);
  const std::uint32_t* e = raw(k);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const std::uint32_t x = (e[i * n_ + j] + m_ - (i == j ? 1u : 0u)) % m_;
      if (x % d != 0) return false;
    }
  return true;
}

bool FiniteGroupTable::in_root(std::size_t k, std::size_t i, std::size_t j, std::uint32_t ideal_gen) const {
  const std::uint32_t d = std::gcd(ideal_gen, m_);
  const std::uint32_t* e = raw(k);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      const std::uint32_t x = e[a * n_ + b];
      if (a + 1 == i && b + 1 == j) {
        if (x % d != 0) return false;
      } else if (x != (a == b ? 1 % m_ : 0)) {
        return false;
      }
    }
  return true;
}

std::vector<std::size_t> FiniteGroupTable::subgroup(const std::vector<std::size_t>& gens) const {
  std::vector<bool> seen(order_, false);
  std::vector<std::size_t> out{identity_};
  seen[identity_] = true;
  for (std::size_t cur = 0; cur < out.size(); ++cur)
    for (std::size_t g : gens) {
      const std::size_t p = mul(out[cur], g);
      if (!seen[p]) {
        seen[p] = true;
        out.push_back(p);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGroupTable enumerate_sl(std::size_t n, const RingSpec& ring, std::uint64_t budget) {
  const std::uint32_t m = modulus_of(ring);
  const mpz_class expected = sl_order(n, m);
  if (expected > budget)
    throw Error(ErrorKind::BudgetExceeded, "|SL_" + std::to_string(n) + "(" + ring.descriptor() +
                                               ")| = " + expected.get_str() + " exceeds budget");
  std::vector<SqMatrix> gens;
  const RingElement one = RingElement::from_integer(ring, 1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) gens.push_back(elementary(i, j, one, n));
  FiniteGroupTable t = FiniteGroupTable::generated_by(gens, budget);
  if (t.order() != expected.get_ui())
    throw Error(ErrorKind::InternalError,
                "enumerated " + std::to_string(t.order()) + " elements, expected " + expected.get_str());
  return t;
}

std::pair<std::size_t, RingSpec> parse_group_descriptor(std::string_view descriptor) {
  const auto bad = [&] { return Error(ErrorKind::ParseError, "bad group descriptor '" + std::string(descriptor) + "'"); };
  const auto comma = descriptor.find(',');
  if (!descriptor.starts_with("SL") || comma == std::string_view::npos) throw bad();
  std::size_t n = 0;
  const auto dim = descriptor.substr(2, comma - 2);
  const auto [ptr, ec] = std::from_chars(dim.data(), dim.data() + dim.size(), n);
  if (ec != std::errc{} || ptr != dim.data() + dim.size() || n < 2) throw bad();
  std::string ring(descriptor.substr(comma + 1));
  if (ring.starts_with("F")) {
    const std::string digits = ring.substr(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw bad();
    const mpz_class p(digits);
    if (!is_prime(p)) throw bad();
    ring = "Z/" + p.get_str();
  }
  return {n, RingSpec::parse(ring)};
}

std::vector<std::pair<std::size_t, std::size_t>> all_targets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) out.emplace_back(i, j);
  return out;
}

WidthOracle::WidthOracle(const FiniteGroupTable& table, const Ideal& q, ConjugatorGroup group) : table_(table) {
  if (!(q.ring() == table.ring())) throw Error(ErrorKind::MismatchedRings, "ideal and group rings differ");
  gen_ = residue_of(q.generator(), table.modulus());
  if (gen_ == 0) throw Error(ErrorKind::ZeroIdeal, "width search needs a nonzero ideal");
  if (group == ConjugatorGroup::Elementary) {
    std::vector<std::size_t> gens;
    const RingElement g = RingElement::from_integer(table.ring(), gen_);
    for (const auto& [i, j] : all_targets(table.dim()))
      gens.push_back(*table.index_of(elementary(i, j, g, table.dim())));
    conjugators_ = table.subgroup(gens);
  } else {
    for (std::size_t k = 0; k < table.order(); ++k)
      if (table.in_congruence(k, gen_)) conjugators_.push_back(k);
  }
}

WidthResult WidthOracle::run(std::size_t sigma,
                             const std::vector<std::pair<std::size_t, std::size_t>>& targets) const {
  if (table_.is_central(sigma)) throw Error(ErrorKind::CentralInput, "sigma is central");
  const std::size_t n = table_.dim();
  for (const auto& [i, j] : targets)
    if (i == j || i < 1 || j < 1 || i > n || j > n) throw Error(ErrorKind::BadIndices, "bad target");
  const std::size_t N = table_.order();
  constexpr unsigned kNone = ~0u;
  std::vector<unsigned> ops(targets.size(), kNone), len(targets.size(), kNone);

  auto record = [&](std::vector<unsigned>& best, std::size_t x, unsigned d) {
    if (x == table_.identity()) return std::size_t{0};
    std::size_t fresh = 0;
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (best[t] == kNone && table_.in_root(x, targets[t].first, targets[t].second, gen_)) {
        best[t] = d;
        ++fresh;
      }
    return fresh;
  };

  // q-operation graph from sigma.
  {
    std::vector<unsigned> dist(N, kNone);
    std::deque<std::size_t> queue{sigma};
    dist[sigma] = 0;
    std::size_t found = 0;
    while (!queue.empty() && found < targets.size()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      found += record(ops, x, dist[x]);
      for (std::size_t s : conjugators_)
        for (std::size_t y : {table_.conjugate(x, s), table_.commutator(x, s), table_.commutator(s, x)})
          if (dist[y] == kNone) {
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
    }
  }
  // Cayley graph on the conjugates of sigma^{+-1}.
  {
    std::vector<bool> is_gen(N, false);
    std::vector<std::size_t> gens;
    for (std::size_t s : conjugators_)
      for (std::size_t y : {table_.conjugate(sigma, s), table_.conjugate(table_.inv(sigma), s)})
        if (!is_gen[y]) {
          is_gen[y] = true;
          gens.push_back(y);
        }
    std::vector<unsigned> dist(N, kNone);
    std::deque<std::size_t> queue{table_.identity()};
    dist[table_.identity()] = 0;
    std::size_t found = 0;
    while (!queue.empty() && found < targets.size()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      found += record(len, x, dist[x]);
      for (std::size_t g : gens) {
        const std::size_t y = table_.mul(x, g);
        if (dist[y] == kNone) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }

  WidthResult result{sigma, {}};
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (ops[t] == kNone || len[t] == kNone)
      throw Error(ErrorKind::Unreachable, "sigma #" + std::to_string(sigma) + " never reaches E_" +
                                              std::to_string(targets[t].first) + std::to_string(targets[t].second) +
                                              "(q) \\ {I}");
    result.targets.push_back({targets[t].first, targets[t].second, ops[t], len[t]});
  }
  return result;
}

WidthResult width_bfs(const FiniteGroupTable& table, std::size_t sigma,
                      const std::vector<std::pair<std::size_t, std::size_t>>& targets, const Ideal& q,
                      ConjugatorGroup group) {
  return WidthOracle(table, q, group).run(sigma, targets);
}

WidthCensus width_census(const FiniteGroupTable& table, const Ideal& q, ConjugatorGroup group) {
  const WidthOracle oracle(table, q, group);
  const auto targets = all_targets(table.dim());
  WidthCensus census;
  mpz_class sum_ops = 0, sum_len = 0;
  std::size_t pairs = 0;
  for (std::size_t k = 0; k < table.order(); ++k) {
    if (table.is_central(k)) {
      ++census.skipped_central;
      continue;
    }
    WidthResult r;
    try {
      r = oracle.run(k, targets);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unreachable) throw;
      census.unreachable.push_back(k);
      continue;
    }
    for (const auto& t : r.targets) {
      census.max_ops = std::max(census.max_ops, t.min_ops);
      census.max_len = std::max(census.max_len, t.min_len);
      sum_ops += t.min_ops;
      sum_len += t.min_len;
      ++pairs;
    }
    census.rows.push_back(std::move(r));
  }
  if (pairs > 0) {
    census.mean_ops = mpq_class(sum_ops, pairs);
    census.mean_len = mpq_class(sum_len, pairs);
    census.mean_ops.canonicalize();
    census.mean_len.canonicalize();
  }
  return census;
}

std::string WidthCensus::to_csv() const {
  std::ostringstream out;
  out << "sigma_index,min_ops,min_len,target\n";
  for (const auto& r : rows)
    for (const auto& t : r.targets) out << r.sigma << ',' << t.min_ops << ',' << t.min_len << ',' << t.i << ':' << t.j << '\n';
  out << "{\"sigmas\": " << rows.size() << ", \"skipped_central\": " << skipped_central
      << ", \"unreachable\": " << unreachable.size() << ", \"max_ops\": " << max_ops
      << ", \"mean_ops\": \"" << mean_ops.get_str() << "\", \"max_len\": " << max_len << ", \"mean_len\": \""
      << mean_len.get_str() << "\"}\n";
  return out.str();
}

namespace {

std::int64_t det_mod(std::vector<std::int64_t> a, std::size_t n, std::int64_t m) {
  if (n == 1) return ((a[0] % m) + m) % m;
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::int64_t> minor;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor.push_back(a[i * n + j]);
    const std::int64_t term = a[c] % m * det_mod(std::move(minor), n - 1, m) % m;
    det = (c % 2 == 0 ? det + term : det - term + m) % m;
  }
  return det;
}

}  // namespace

SumSetReport sum_set_census(const std::vector<SqMatrix>& gens, std::uint32_t m, unsigned M, std::uint32_t level,
                            std::uint64_t cell_budget) {
  if (gens.empty()) throw Error(ErrorKind::DimensionMismatch, "no generators");
  if (m < 2) throw Error(ErrorKind::UnsupportedRing, "modulus must be at least 2");
  if (level == 0 || m % level != 0) throw Error(ErrorKind::BadIndices, "level must divide the modulus");
  const std::size_t n = gens.front().dim();
  const std::size_t nn = n * n;
  mpz_class cells;
  mpz_ui_pow_ui(cells.get_mpz_t(), m, nn);
  if (cells > cell_budget) throw Error(ErrorKind::BudgetExceeded, "m^(n^2) = " + cells.get_str() + " cells");
  const std::uint64_t ncells = cells.get_ui();

  const RingSpec zm = RingSpec::integers_mod(m);
  std::vector<SqMatrix> reduced;
  for (const auto& g : gens) {
    if (g.dim() != n) throw Error(ErrorKind::DimensionMismatch, "generators differ in size");
    SqMatrix r(zm, n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        if (g.ring().kind() != RingKind::Integers && g.ring().kind() != RingKind::IntegersMod)
          throw Error(ErrorKind::UnsupportedRing, "sum sets need integer generators");
        r.at(i, j) = RingElement::from_integer(zm, g(i, j).value());
      }
    reduced.push_back(std::move(r));
  }
  const FiniteGroupTable group = FiniteGroupTable::generated_by(reduced, 1'000'000);

  auto encode = [&](const std::uint32_t* e) {
    std::uint64_t code = 0;
    for (std::size_t k = nn; k-- > 0;) code = code * m + e[k];
    return code;
  };
  auto decode = [&](std::uint64_t code, std::uint32_t* e) {
    for (std::size_t k = 0; k < nn; ++k, code /= m) e[k] = static_cast<std::uint32_t>(code % m);
  };

  // Target: SL_n(Z/m) elements congruent to I mod level.
  std::vector<std::uint64_t> target;
  std::vector<std::uint64_t> scalars;
  {
    const std::uint32_t step = level;
    const std::uint32_t per = m / level;
    std::uint64_t combos = 1;
    for (std::size_t k = 0; k < nn; ++k) combos *= per;
    std::vector<std::uint32_t> e(nn);
    std::vector<std::int64_t> as_int(nn);
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t r = c;
      for (std::size_t k = 0; k < nn; ++k, r /= per) {
        const bool diag = k / n == k % n;
        e[k] = static_cast<std::uint32_t>(((diag ? 1 : 0) + (r % per) * step) % m);
        as_int[k] = e[k];
      }
      if (det_mod(as_int, n, m) != 1 % m) continue;
      target.push_back(encode(e.data()));
      bool scalar = true;
      for (std::size_t k = 0; k < nn; ++k)
        if (e[k] != (k / n == k % n ? e[0] : 0)) scalar = false;
      if (scalar) scalars.push_back(target.back());
    }
  }

  SumSetReport report{m, level, group.order(), target.size(), scalars.size(), {}, std::nullopt};
  std::vector<bool> cumulative(ncells, false);
  std::vector<std::uint64_t> current;
  {
    std::vector<bool> seen(ncells, false);
    for (std::size_t k = 0; k < group.order(); ++k) {
      const std::uint64_t code = encode(group.raw(k));
      if (!seen[code]) {
        seen[code] = true;
        current.push_back(code);
      }
    }
  }
  std::uint64_t cumulative_count = 0;
  std::vector<std::uint32_t> x(nn), y(nn);
  for (unsigned l = 1; l <= M; ++l) {
    if (l > 1) {
      std::vector<bool> seen(ncells, false);
      std::vector<std::uint64_t> next;
      for (std::uint64_t code : current) {
        decode(code, x.data());
        for (std::size_t g = 0; g < group.order(); ++g) {
          const std::uint32_t* e = group.raw(g);
          for (std::size_t k = 0; k < nn; ++k) y[k] = (x[k] + e[k]) % m;
          const std::uint64_t s = encode(y.data());
          if (!seen[s]) {
            seen[s] = true;
            next.push_back(s);
          }
        }
      }
      current = std::move(next);
    }
    for (std::uint64_t code : current)
      if (!cumulative[code]) {
        cumulative[code] = true;
        ++cumulative_count;
      }
    SumSetLevel lv{l, current.size(), cumulative_count, 0, 0};
    for (std::uint64_t code : target) lv.target_covered += cumulative[code];
    for (std::uint64_t code : scalars) lv.scalar_covered += cumulative[code];
    if (!report.covered_at && lv.target_covered == target.size()) report.covered_at = l;
    report.levels.push_back(lv);
  }
  return report;
}

std::string SumSetReport::to_text() const {
  std::ostringstream out;
  out << "sumset m=" << modulus << " level=" << level << " group_order=" << group_order
      << " target_size=" << target_size << " scalar_size=" << scalar_size << '\n';
  for (const auto& lv : levels)
    out << "l=" << lv.l << " exact=" << lv.exact << " cumulative=" << lv.cumulative
        << " target_covered=" << lv.target_covered << " scalar_covered=" << lv.scalar_covered << '\n';
  out << "covered_at=" << (covered_at ? std::to_string(*covered_at) : std::string("none")) << '\n';
  return out.str();
}

namespace {

SqMatrix integer_matrix(const mpz_class& a, const mpz_class& b, const mpz_class& c, const mpz_class& d) {
  const RingSpec Z = RingSpec::integers();
  return SqMatrix::from_rows(Z, {{RingElement::from_integer(Z, a), RingElement::from_integer(Z, b)},
                                 {RingElement::from_integer(Z, c), RingElement::from_integer(Z, d)}});
}

SqMatrix add(const SqMatrix& x, const SqMatrix& y) {
  SqMatrix s(x.ring(), x.dim());
  for (std::size_t i = 1; i <= x.dim(); ++i)
    for (std::size_t j = 1; j <= x.dim(); ++j) s.at(i, j) = x(i, j) + y(i, j);
  return s;
}

}  // namespace

SumIdentityResult verify_sum_identity(const mpz_class& m, const mpz_class& a, const mpz_class& b,
                                      const mpz_class& c, const mpz_class& d) {
  const mpz_class m2 = m * m;
  const mpz_class s = 2 * m2 - 3;
  std::vector<SqMatrix> terms{
      integer_matrix(s, 0, 0, s),
      integer_matrix(1, m * (b - 2), 0, 1),
      integer_matrix(1, 0, m * (c - a - d + 4), 1),
      integer_matrix(1 + m2 * (a - 2), m, m * (a - 2), 1),
      integer_matrix(1, m, m * (d - 2), 1 + m2 * (d - 2)),
  };
  SqMatrix rhs = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k) rhs = add(rhs, terms[k]);
  SqMatrix lhs = integer_matrix(1 + m2 * a, m * b, m * c, 1 + m2 * d);
  const bool holds = lhs == rhs;
  return {holds, std::move(lhs), std::move(rhs), std::move(terms)};
}

namespace {

// Polynomials in (m, a, b, c, d) with integer coefficients.
using Monomial = std::array<unsigned, 5>;
using Poly = std::map<Monomial, mpz_class>;

Poly constant(long v) {
  Poly p;
  if (v != 0) p[Monomial{}] = v;
  return p;
}

Poly variable(std::size_t k) {
  Monomial mono{};
  mono[k] = 1;
  return Poly{{mono, 1}};
}

Poly operator+(Poly x, const Poly& y) {
  for (const auto& [mono, c] : y) {
    x[mono] += c;
    if (x[mono] == 0) x.erase(mono);
  }
  return x;
}

Poly operator-(const Poly& x) {
  Poly out;
  for (const auto& [mono, c] : x) out[mono] = -c;
  return out;
}

Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }

Poly operator*(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      Monomial mono;
      for (std::size_t k = 0; k < 5; ++k) mono[k] = mx[k] + my[k];
      out[mono] += cx * cy;
      if (out[mono] == 0) out.erase(mono);
    }
  return out;
}

std::string poly_string(const Poly& p) {
  if (p.empty()) return "0";
  static const char* names[] = {"m", "a", "b", "c", "d"};
  std::string out;
  for (const auto& [mono, c] : p) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    mpz_class mag = abs(c);
    std::string term;
    for (std::size_t k = 0; k < 5; ++k)
      if (mono[k] > 0) {
        if (!term.empty()) term += "*";
        term += names[k];
        if (mono[k] > 1) term += "^" + std::to_string(mono[k]);
      }
    if (term.empty()) out += mag.get_str();
    else out += (mag == 1 ? "" : mag.get_str() + "*") + term;
  }
  return out;
}

}  // namespace

std::vector<std::string> sum_identity_symbolic_difference() {
  const Poly m = variable(0), a = variable(1), b = variable(2), c = variable(3), d = variable(4);
  const Poly one = constant(1), two = constant(2), zero;
  const Poly m2 = m * m;
  const Poly s = two * m2 - constant(3);
  using P4 = std::array<Poly, 4>;
  const std::vector<P4> terms{
      P4{s, zero, zero, s},
      P4{one, m * (b - two), zero, one},
      P4{one, zero, m * (c - a - d + constant(4)), one},
      P4{one + m2 * (a - two), m, m * (a - two), one},
      P4{one, m, m * (d - two), one + m2 * (d - two)},
  };
  const P4 lhs{one + m2 * a, m * b, m * c, one + m2 * d};
  std::vector<std::string> out;
  for (std::size_t k = 0; k < 4; ++k) {
    Poly diff = lhs[k];
    for (const auto& t : terms) diff = diff - t[k];
    out.push_back(poly_string(diff));
  }
  return out;
}

}  // namespace qwidth
