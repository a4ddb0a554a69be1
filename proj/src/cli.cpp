#include "qwidth/cli.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qwidth/census.hpp"
#include "qwidth/elemgen.hpp"
#include "qwidth/error.hpp"
#include "qwidth/norms.hpp"
#include "qwidth/widthred.hpp"

namespace qwidth {

namespace {

Error usage(const std::string& what) { return Error(ErrorKind::UsageError, what); }

std::pair<std::size_t, std::size_t> parse_target(const std::string& text) {
  std::size_t i = 0, j = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> i >> comma >> j) || comma != ',' || !in.eof() || i == 0 || j == 0 || i == j)
    throw usage("bad target '" + text + "', expected i,j with i != j");
  return {i, j};
}

std::vector<long> parse_tuple(const std::string& text) {
  std::vector<long> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw usage("bad tuple entry '" + part + "'");
    }
  }
  if (out.size() != 5) throw usage("tuple '" + text + "' needs five entries m,a,b,c,d");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) throw usage(c.subcommand + " needs exactly one --in");
  return c.inputs.front();
}

std::string do_reduce(const RunConfig& c) {
  const SqMatrix sigma = SqMatrix::parse_text(read_file(single_input(c)));
  const RingSpec ring = RingSpec::parse(c.ring);
  if (!(ring == sigma.ring()))
    throw Error(ErrorKind::MismatchedRings, "--ring " + c.ring + " but the matrix is over " + sigma.ring().descriptor());
  if (c.ideal.empty()) throw usage("reduce needs --ideal");
  if (!c.target) throw usage("reduce needs --target");
  const Ideal q = Ideal::parse(ring, c.ideal);
  const ReductionTrace trace = reduce_full(sigma, q, c.target->first, c.target->second, c.seed);
  replay_trace(trace);
  return trace.serialize();
}

std::string do_replay(const RunConfig& c) {
  const ReductionTrace trace = ReductionTrace::parse(read_file(single_input(c)));
  replay_trace(trace);
  return "replay ok steps=" + std::to_string(trace.steps.size()) +
         " word_length=" + std::to_string(trace.word_length()) + " seed=" + std::to_string(trace.seed) + "\n";
}

std::string do_decompose(const RunConfig& c) {
  const SqMatrix g = SqMatrix::parse_text(read_file(single_input(c)));
  const ElemFactorization f = decompose_elementary(g);
  std::string out = "decompose ring=" + g.ring().descriptor() + " n=" + std::to_string(g.dim()) +
                    " seed=" + std::to_string(c.seed) + " factors=" + std::to_string(f.count()) + "\n";
  for (const auto& e : f.factors)
    out += std::to_string(e.i) + "," + std::to_string(e.j) + "," + e.a.to_string() + "\n";
  return out;
}

std::string do_norm(const RunConfig& c) {
  if (c.config.empty()) throw usage("norm needs --config");
  const NormConfig config = NormConfig::parse(read_file(c.config));
  std::optional<std::string> element;
  if (!c.eval.empty()) element = read_file(c.eval);
  return run_norm_config(config, element, c.samples, c.seed).to_text();
}

std::string do_census(const RunConfig& c) {
  if (c.group.empty()) throw usage("census needs --group");
  const auto [n, ring] = parse_group_descriptor(c.group);
  const std::string ideal = c.ideal.empty() ? "1" : c.ideal;
  std::string out = "# census group=" + c.group + " kind=" + c.kind + " ideal=" + ideal +
                    " conjugators=" + c.conjugators + " seed=" + std::to_string(c.seed) + "\n";
  if (c.kind == "factors") return out + factor_count_census(n, ring, c.budget).to_csv();
  const FiniteGroupTable table = enumerate_sl(n, ring, c.budget);
  const auto group = c.conjugators == "Gamma" ? ConjugatorGroup::Congruence : ConjugatorGroup::Elementary;
  return out + width_census(table, Ideal::parse(ring, ideal), group).to_csv();
}

std::string do_sumid(const RunConfig& c, bool& failed) {
  std::vector<std::vector<long>> tuples;
  if (!c.tuple.empty()) {
    tuples.push_back(c.tuple);
  } else {
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<long> d(-100, 100);
    for (std::size_t k = 0; k < c.count; ++k) tuples.push_back({d(rng), d(rng), d(rng), d(rng), d(rng)});
  }
  std::string out = "sumid seed=" + std::to_string(c.seed) + " count=" + std::to_string(tuples.size()) + "\n";
  for (const auto& t : tuples) {
    const bool ok = verify_sum_identity(t[0], t[1], t[2], t[3], t[4]).holds;
    failed = failed || !ok;
    out += "m=" + std::to_string(t[0]) + " a=" + std::to_string(t[1]) + " b=" + std::to_string(t[2]) +
           " c=" + std::to_string(t[3]) + " d=" + std::to_string(t[4]) + (ok ? " OK\n" : " FAIL\n");
  }
  return out;
}

std::string do_sumset(const RunConfig& c) {
  if (c.modulus < 2) throw usage("sumset needs --modulus >= 2");
  std::vector<SqMatrix> gens;
  for (const auto& path : c.inputs) gens.push_back(SqMatrix::parse_text(read_file(path)));
  if (gens.empty()) {
    const RingSpec zr = RingSpec::integers();
    const RingElement s = RingElement::from_integer(zr, c.step);
    gens = {elementary(1, 2, s, 2), elementary(2, 1, s, 2)};
  }
  return "sumset seed=" + std::to_string(c.seed) + "\n" +
         sum_set_census(gens, c.modulus, c.max_summands, c.level, c.budget * 100).to_text();
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Exact conjugacy-width reduction, conjugation-invariant norms and finite censuses", "qwidth"};
  app.require_subcommand(1);
  std::string target;
  std::string tuple;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "seed recorded in every output");
    sub->add_option("--out", c.output, "output file (default: stdout)");
  };
  auto* reduce = app.add_subcommand("reduce", "reduce a matrix to an elementary matrix and write the trace");
  reduce->add_option("--ring", c.ring, "ring descriptor: Z, Z/m, Fp[x], Z[1/p]");
  reduce->add_option("--ideal", c.ideal, "ideal generators, ';'-separated")->required();
  reduce->add_option("--in", c.inputs, "matrix file")->required();
  reduce->add_option("--target", target, "target position i,j")->required();
  common(reduce);
  auto* replay = app.add_subcommand("replay", "verify a trace file");
  replay->add_option("--in", c.inputs, "trace file")->required();
  common(replay);
  auto* decompose = app.add_subcommand("decompose", "write a matrix as a product of elementary matrices");
  decompose->add_option("--in", c.inputs, "matrix file")->required();
  common(decompose);
  auto* norm = app.add_subcommand("norm", "evaluate a configured norm and run the axiom harness");
  norm->add_option("--config", c.config, "norm configuration file")->required();
  norm->add_option("--eval", c.eval, "element file: matrix text, or x,y for norms on Z^2");
  norm->add_option("--samples", c.samples, "harness samples, 0 to skip")->check(CLI::NonNegativeNumber);
  common(norm);
  auto* census = app.add_subcommand("census", "brute-force width or factor-count census");
  census->add_option("--group", c.group, "group descriptor such as SL3,F2 or SL2,Z/4")->required();
  census->add_option("--kind", c.kind, "width or factors")->check(CLI::IsMember({"width", "factors"}));
  census->add_option("--ideal", c.ideal, "ideal generator (default 1)");
  census->add_option("--conjugators", c.conjugators, "E or Gamma")->check(CLI::IsMember({"E", "Gamma"}));
  census->add_option("--budget", c.budget, "largest group order")->check(CLI::PositiveNumber);
  common(census);
  auto* sumid = app.add_subcommand("sumid", "check the five-term sum identity");
  sumid->add_option("--tuple", tuple, "m,a,b,c,d (default: random tuples from the seed)");
  sumid->add_option("--count", c.count, "number of random tuples")->check(CLI::PositiveNumber);
  common(sumid);
  auto* sumset = app.add_subcommand("sumset", "growth of sums of group elements modulo m");
  sumset->add_option("--modulus", c.modulus, "modulus m")->required()->check(CLI::Range(2u, 1u << 16));
  sumset->add_option("--max", c.max_summands, "largest number of summands")->check(CLI::PositiveNumber);
  sumset->add_option("--level", c.level, "target level")->check(CLI::PositiveNumber);
  sumset->add_option("--step", c.step, "entry of the default generators I + s e12, I + s e21");
  sumset->add_option("--in", c.inputs, "generator matrix files");
  sumset->add_option("--budget", c.budget, "cell budget / 100")->check(CLI::PositiveNumber);
  common(sumset);

  if (!args.empty() && !args.front().starts_with("-")) {
    const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
    if (std::none_of(subs.begin(), subs.end(), [&](const CLI::App* s) { return s->get_name() == args.front(); }))
      throw usage("unknown subcommand '" + args.front() + "'");
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    c.subcommand = "help";
    c.help = app.help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw usage(e.what());
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (!target.empty()) c.target = parse_target(target);
  if (!tuple.empty()) c.tuple = parse_tuple(tuple);
  try {
    (void)RingSpec::parse(c.ring);
    if (!c.group.empty()) (void)parse_group_descriptor(c.group);
  } catch (const Error& e) {
    throw usage(e.what());
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "help") {
    out << c.help;
    return 0;
  }
  try {
    bool failed = false;
    std::string text;
    if (c.subcommand == "reduce") text = do_reduce(c);
    else if (c.subcommand == "replay") text = do_replay(c);
    else if (c.subcommand == "decompose") text = do_decompose(c);
    else if (c.subcommand == "norm") text = do_norm(c);
    else if (c.subcommand == "census") text = do_census(c);
    else if (c.subcommand == "sumid") text = do_sumid(c, failed);
    else if (c.subcommand == "sumset") text = do_sumset(c);
    else throw usage("unknown subcommand " + c.subcommand);
    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream f(c.output, std::ios::binary);
      if (!(f << text)) throw Error(ErrorKind::ParseError, "cannot write " + c.output);
    }
    if (failed) err << "sum identity failed\n";
    return failed ? 1 : 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_args(args);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return run(c, out, err);
}

}  // namespace qwidth
