// Scenario configuration and execution behind the command-line tool.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zlaw/verify.hpp"

namespace zlaw {

enum class Command { eval, nupoints, sets, verify_t1, verify_t2, verify_lemmas, verify_hl, ladder, bench, all };
enum class Format { csv, json };

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Invalid configuration, with the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument("--" + field + ": " + what), field(field) {}
  std::string field;
};

/// A real number: decimal or scientific notation, or a multiple of pi such
/// as pi, -pi/2, 3pi/4, 3*pi/4, pi*0.25. Throws std::invalid_argument.
double parse_number(std::string_view text);
/// Comma-separated list of parse_number values.
std::vector<double> parse_list(std::string_view text);

struct ScenarioConfig {
  Command command = Command::all;
  double T = 1e6;
  double H = 1e3;
  Parity parity = Parity::all;
  std::vector<double> xs;    // empty: the defaults below
  std::vector<double> ys;    // empty: same as xs
  std::vector<double> taus;
  std::vector<double> ts;    // eval abscissae; empty: T and T + H/2
  int remainder_order = 2;
  int oracle_digits = 15;
  VerifyConfig verify;
  long bench_n = 10000;
  std::uint64_t seed = 20140301;
  std::string output_path;   // empty: stdout
  Format format = Format::csv;
  /// Zero every timing so reports are byte-comparable.
  bool deterministic = false;
  unsigned threads = 1;

  std::vector<double> x_grid() const;
  std::vector<double> y_grid() const;
  std::vector<double> tau_grid() const;
  std::vector<double> t_grid() const;
};

/// Checks every field against the preconditions of the modules it feeds.
void validate(const ScenarioConfig& cfg);

struct RunMetadata {
  std::string version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t z_evaluations = 0;
  double wall_seconds = 0.0;
};

struct RunResult {
  RunMetadata metadata;
  std::vector<VerificationReport> rows;  // sorted by scenario, then parameters
};

RunResult run_scenario(const ScenarioConfig& cfg);

/// 0 when every row passes, 2 otherwise.
int exit_status(const RunResult& r);

/// Thread count from ZLAW_THREADS, else the hardware concurrency. Throws
/// ConfigError on a malformed value.
unsigned threads_from_environment();

}  // namespace zlaw
