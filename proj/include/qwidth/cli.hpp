#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qwidth {

struct RunConfig {
  std::string subcommand;  // "help" when --help was given
  std::string help;
  std::string ring = "Z";
  std::string ideal;
  std::vector<std::string> inputs;
  std::optional<std::pair<std::size_t, std::size_t>> target;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  std::size_t samples = 1000;
  std::string output;

  // census
  std::string group;
  std::string kind = "width";
  std::string conjugators = "E";
  // norm
  std::string config;
  std::string eval;
  // sumid
  std::vector<long> tuple;
  std::size_t count = 1;
  // sumset
  std::uint32_t modulus = 0;
  unsigned max_summands = 1;
  std::uint32_t level = 1;
  long step = 1;
};

/// Validates flags and descriptors. Throws Error(UsageError) naming the
/// offending token; `--help` output is reported the same way.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs a parsed configuration, writing the main output to `out` (or to
/// config.output) and diagnostics to `err`. Returns 0, or 1 on domain errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args plus run; usage errors give exit status 2.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwidth
