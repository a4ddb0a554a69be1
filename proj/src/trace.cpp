#include <sstream>

#include "qwidth/widthred.hpp"

namespace qwidth {

std::string_view to_string(QOpKind kind) {
  switch (kind) {
    case QOpKind::Conjugate:
      return "Conjugate";
    case QOpKind::CommRight:
      return "CommRight";
    case QOpKind::CommLeft:
      return "CommLeft";
  }
  return "?";
}

SqMatrix apply_qop(QOpKind kind, const SqMatrix& g, const SqMatrix& s) {
  switch (kind) {
    case QOpKind::Conjugate:
      return conjugate(g, s);
    case QOpKind::CommRight:
      return commutator(g, s);
    case QOpKind::CommLeft:
      return commutator(s, g);
  }
  throw Error(ErrorKind::InternalError, "unknown q-operation");
}

std::size_t ReductionTrace::count_tagged(std::string_view prefix) const {
  std::size_t count = 0;
  for (const auto& st : steps) count += st.tag.starts_with(prefix);
  return count;
}

void ReductionTrace::push(QOpKind kind, SqMatrix s, std::vector<ElemFactor> factors, std::string tag) {
  SqMatrix result = apply_qop(kind, output(), s);
  const std::uint64_t len = word_length() * (kind == QOpKind::Conjugate ? 1 : 2);
  steps.push_back({kind, std::move(s), std::move(factors), std::move(result), len, std::move(tag)});
}

void ReductionTrace::append(const ReductionTrace& segment) {
  if (!(segment.input == output())) throw Error(ErrorKind::InternalError, "trace segment does not continue the trace");
  const std::uint64_t base = word_length();
  for (TraceStep st : segment.steps) {
    st.word_length *= base;
    steps.push_back(std::move(st));
  }
}

bool is_nontrivial_root(const SqMatrix& g, std::size_t i, std::size_t j, const Ideal& q) {
  const std::size_t n = g.dim();
  if (i == j || i < 1 || j < 1 || i > n || j > n) return false;
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = 1; b <= n; ++b) {
      if (a == i && b == j) continue;
      if (a == b ? !g(a, b).is_one() : !g(a, b).is_zero()) return false;
    }
  return !g(i, j).is_zero() && q.contains(g(i, j));
}

namespace {

[[noreturn]] void mismatch(std::size_t step, const std::string& what) {
  throw Error(ErrorKind::ReplayMismatch, "replay mismatch at step " + std::to_string(step) + ": " + what);
}

}  // namespace

void replay_trace(const ReductionTrace& trace) {
  const RingSpec& ring = trace.input.ring();
  const std::size_t n = trace.input.dim();
  if (!(trace.ideal.ring() == ring)) throw Error(ErrorKind::MismatchedRings, "trace ideal over another ring");
  SqMatrix cur = trace.input;
  std::uint64_t len = 1;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& st = trace.steps[k];
    const std::size_t label = k + 1;
    if (!(st.s.ring() == ring) || st.s.dim() != n) mismatch(label, "s has the wrong shape");
    if (trace.group == SGroup::Elementary) {
      if (!(multiply_factors(st.s_factors, ring, n) == st.s)) mismatch(label, "factors do not multiply to s");
      for (const auto& f : st.s_factors)
        if (f.i == f.j || !trace.ideal.contains(f.a)) mismatch(label, "factor outside E(n, A, q)");
    } else {
      if (!determinant(st.s).is_one() || !is_congruent_to_identity(st.s, trace.ideal))
        mismatch(label, "s is not in Gamma(q)");
    }
    cur = apply_qop(st.kind, cur, st.s);
    if (!(cur == st.result)) mismatch(label, "result differs");
    len *= st.kind == QOpKind::Conjugate ? 1 : 2;
    if (len != st.word_length) mismatch(label, "word length ledger differs");
  }
}

std::vector<WordLetter> expand_trace_word(const ReductionTrace& trace) {
  const RingSpec& ring = trace.input.ring();
  const std::size_t n = trace.input.dim();
  std::vector<WordLetter> word{{SqMatrix::identity(ring, n), 1}};
  auto conj_by = [](const std::vector<WordLetter>& w, const SqMatrix& t) {
    std::vector<WordLetter> out;
    out.reserve(w.size());
    for (const auto& l : w) out.push_back({t * l.s, l.exponent});
    return out;
  };
  auto inverse = [](const std::vector<WordLetter>& w) {
    std::vector<WordLetter> out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->s, -it->exponent});
    return out;
  };
  for (const auto& st : trace.steps) {
    switch (st.kind) {
      case QOpKind::Conjugate:
        word = conj_by(word, st.s);
        break;
      case QOpKind::CommRight: {
        auto tail = conj_by(inverse(word), st.s);
        word.insert(word.end(), tail.begin(), tail.end());
        break;
      }
      case QOpKind::CommLeft: {
        auto head = conj_by(word, st.s);
        auto tail = inverse(word);
        head.insert(head.end(), tail.begin(), tail.end());
        word = std::move(head);
        break;
      }
    }
  }
  return word;
}

SqMatrix evaluate_word(const std::vector<WordLetter>& word, const SqMatrix& sigma) {
  const SqMatrix sigma_inv = mat_inv(sigma);
  SqMatrix out = SqMatrix::identity(sigma.ring(), sigma.dim());
  for (const auto& l : word) out = out * conjugate(l.exponent > 0 ? sigma : sigma_inv, l.s);
  return out;
}

std::string ReductionTrace::serialize() const {
  std::ostringstream out;
  out << "trace v1\n";
  out << "ring " << input.ring().descriptor() << '\n';
  out << "ideal " << ideal.to_string() << '\n';
  if (target) out << "target " << target->first << ',' << target->second << '\n';
  else out << "target -\n";
  out << "group " << (group == SGroup::Elementary ? "E" : "Gamma") << '\n';
  out << "seed " << seed << '\n';
  out << "input M0\n";
  out << "steps " << steps.size() << '\n';
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const TraceStep& st = steps[k];
    out << "kind=" << to_string(st.kind) << " s=M" << 2 * k + 1 << " out=M" << 2 * k + 2 << " len=" << st.word_length
        << " case=" << st.tag << " fac=";
    if (st.s_factors.empty()) out << '-';
    for (std::size_t f = 0; f < st.s_factors.size(); ++f) {
      if (f) out << ';';
      out << st.s_factors[f].i << ':' << st.s_factors[f].j << ':' << st.s_factors[f].a.to_string();
    }
    out << '\n';
  }
  out << "output M" << 2 * steps.size() << '\n';
  out << "matrices " << 2 * steps.size() + 1 << '\n';
  out << "M0\n" << input.to_text();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    out << 'M' << 2 * k + 1 << '\n' << steps[k].s.to_text();
    out << 'M' << 2 * k + 2 << '\n' << steps[k].result.to_text();
  }
  return out.str();
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) throw Error(ErrorKind::ParseError, "trace ends early at line " + std::to_string(line_ + 1));
    const std::size_t nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) throw Error(ErrorKind::ParseError, "trace must end with a newline");
    std::string_view line = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    ++line_;
    return line;
  }

  std::string_view expect(std::string_view prefix) {
    std::string_view line = next();
    if (!line.starts_with(prefix))
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_) + ": expected '" + std::string(prefix) + "', got '" + std::string(line) + "'");
    return line.substr(prefix.size());
  }

  bool done() const { return pos_ >= text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::size_t parse_count(std::string_view s) {
  if (s.empty() || s.size() > 18 || s.find_first_not_of("0123456789") != std::string_view::npos)
    throw Error(ErrorKind::ParseError, "bad count '" + std::string(s) + "'");
  return std::stoull(std::string(s));
}

void expect_ref(std::string_view got, std::size_t idx) {
  if (got != "M" + std::to_string(idx))
    throw Error(ErrorKind::ParseError, "expected matrix reference M" + std::to_string(idx) + ", got '" + std::string(got) + "'");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t at = s.find(sep, pos);
    out.push_back(s.substr(pos, at - pos));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return out;
}

QOpKind parse_kind(std::string_view s) {
  if (s == "Conjugate") return QOpKind::Conjugate;
  if (s == "CommRight") return QOpKind::CommRight;
  if (s == "CommLeft") return QOpKind::CommLeft;
  throw Error(ErrorKind::ParseError, "unknown kind '" + std::string(s) + "'");
}

}  // namespace

ReductionTrace ReductionTrace::parse(std::string_view text) {
  LineReader in(text);
  if (in.next() != "trace v1") throw Error(ErrorKind::ParseError, "missing 'trace v1' header");
  const RingSpec ring = RingSpec::parse(in.expect("ring "));
  const Ideal ideal = Ideal::parse(ring, in.expect("ideal "));
  std::optional<std::pair<std::size_t, std::size_t>> target;
  if (const auto t = in.expect("target "); t != "-") {
    const auto parts = split(t, ',');
    if (parts.size() != 2) throw Error(ErrorKind::ParseError, "target must be 'i,j'");
    target = std::pair{parse_count(parts[0]), parse_count(parts[1])};
  }
  SGroup group;
  if (const auto g = in.expect("group "); g == "E") group = SGroup::Elementary;
  else if (g == "Gamma") group = SGroup::Congruence;
  else throw Error(ErrorKind::ParseError, "group must be E or Gamma");
  const std::uint64_t seed = parse_count(in.expect("seed "));
  expect_ref(in.expect("input "), 0);
  const std::size_t nsteps = parse_count(in.expect("steps "));

  struct RawStep {
    QOpKind kind;
    std::uint64_t len;
    std::string tag;
    std::string_view fac;
  };
  std::vector<RawStep> raw;
  for (std::size_t k = 0; k < nsteps; ++k) {
    const auto fields = split(in.next(), ' ');
    if (fields.size() != 6) throw Error(ErrorKind::ParseError, "step line needs 6 fields");
    auto value = [&](std::size_t f, std::string_view key) {
      if (!fields[f].starts_with(key)) throw Error(ErrorKind::ParseError, "expected field '" + std::string(key) + "'");
      return fields[f].substr(key.size());
    };
    RawStep r{parse_kind(value(0, "kind=")), 0, {}, {}};
    expect_ref(value(1, "s="), 2 * k + 1);
    expect_ref(value(2, "out="), 2 * k + 2);
    r.len = parse_count(value(3, "len="));
    r.tag = std::string(value(4, "case="));
    r.fac = value(5, "fac=");
    raw.push_back(std::move(r));
  }
  expect_ref(in.expect("output "), 2 * nsteps);
  const std::size_t nmat = parse_count(in.expect("matrices "));
  if (nmat != 2 * nsteps + 1) throw Error(ErrorKind::ParseError, "matrix table size does not match step count");
  std::vector<SqMatrix> mats;
  for (std::size_t k = 0; k < nmat; ++k) {
    expect_ref(in.next(), k);
    std::string block(in.next());
    const auto header = split(block, ' ');
    const std::size_t n = parse_count(header[0]);
    block += '\n';
    for (std::size_t r = 0; r < n; ++r) {
      block += in.next();
      block += '\n';
    }
    SqMatrix m = SqMatrix::parse_text(block);
    if (!(m.ring() == ring)) throw Error(ErrorKind::ParseError, "matrix M" + std::to_string(k) + " over another ring");
    mats.push_back(std::move(m));
  }
  if (!in.done()) throw Error(ErrorKind::ParseError, "trailing data after matrix table");

  ReductionTrace trace{mats[0], ideal, target, group, seed, {}};
  for (std::size_t k = 0; k < nsteps; ++k) {
    std::vector<ElemFactor> factors;
    if (raw[k].fac != "-") {
      for (const auto item : split(raw[k].fac, ';')) {
        const auto parts = split(item, ':');
        if (parts.size() != 3) throw Error(ErrorKind::ParseError, "factor must be 'i:j:a'");
        factors.push_back({parse_count(parts[0]), parse_count(parts[1]), RingElement::parse(ring, parts[2])});
      }
    }
    trace.steps.push_back({raw[k].kind, mats[2 * k + 1], std::move(factors), mats[2 * k + 2], raw[k].len, raw[k].tag});
  }
  return trace;
}

}  // namespace qwidth
