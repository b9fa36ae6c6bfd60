#include "zlaw/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "zlaw/errors.hpp"
#include "zlaw/report.hpp"

namespace zlaw {
namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::eval, "eval"},
    {Command::nupoints, "nupoints"},
    {Command::sets, "sets"},
    {Command::verify_t1, "verify-t1"},
    {Command::verify_t2, "verify-t2"},
    {Command::verify_lemmas, "verify-lemmas"},
    {Command::verify_hl, "verify-hl"},
    {Command::ladder, "ladder"},
    {Command::bench, "bench"},
    {Command::all, "all"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double plain_number(std::string_view s, std::string_view whole) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }
  return v;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

std::string_view parity_name(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    default:
      return "all";
  }
}

void check_band(const Band& b, const char* field) {
  if (!(b.lo > 0.0) || !(b.hi > b.lo) || !std::isfinite(b.hi)) {
    throw ConfigError(field, "band must satisfy 0 < lo < hi");
  }
}

bool includes(Command run, Command part) { return run == part || (run == Command::all && part != Command::bench); }

std::vector<VerificationReport> bench_rows(const ScenarioConfig& cfg) {
  const WindowSpec w{cfg.T, cfg.H, Parity::all};
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> ts(static_cast<std::size_t>(cfg.bench_n));
  for (double& t : ts) t = cfg.T + static_cast<double>(rng() >> 11) * 0x1p-53 * cfg.H;

  const auto start = std::chrono::steady_clock::now();
  const std::vector<ZValue> zs = rs_z_batch(ts, cfg.verify.eval, cfg.threads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  VerificationReport speed;
  speed.scenario = "bench_evals_per_second";
  speed.T = w.T;
  speed.H = w.H;
  speed.param_name = "n";
  speed.params = {static_cast<double>(cfg.bench_n)};
  speed.observed = secs > 0.0 ? static_cast<double>(cfg.bench_n) / secs : 0.0;
  speed.predicted = std::numeric_limits<double>::quiet_NaN();
  speed.ratio = speed.error_budget = std::numeric_limits<double>::quiet_NaN();
  speed.pass = true;  // informational
  speed.message = "threads=" + std::to_string(cfg.threads);
  speed.n_evals = cfg.bench_n;
  speed.seconds = secs;

  const std::size_t sub = std::min<std::size_t>(100, ts.size());
  const auto ostart = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::size_t i = 0; i < sub; ++i) {
    const std::size_t k = i * ts.size() / sub;
    worst = std::max(worst, std::fabs(zs[k].value - z_oracle(ts[k], cfg.oracle_digits).value));
  }
  VerificationReport acc;
  acc.scenario = "bench_oracle_max_error";
  acc.T = w.T;
  acc.H = w.H;
  acc.param_name = "n";
  acc.params = {static_cast<double>(sub)};
  acc.observed = worst;
  acc.predicted = 0.0;
  acc.error_budget = 10.0 * std::pow(cfg.T, -0.75);
  acc.band = Band{1.0, 0.0};
  acc.safety = cfg.verify.safety;
  acc.n_evals = static_cast<long>(sub);
  acc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - ostart).count();
  settle(acc);
  return {speed, acc};
}

bool params_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

double parse_number(std::string_view text) {
  const std::string_view s = trim(text);
  const std::size_t at = s.find("pi");
  if (at == std::string_view::npos) return plain_number(s, text);

  // [sign][coef[*]]pi[*factor | /divisor]
  std::string_view coef = s.substr(0, at);
  std::string_view rest = s.substr(at + 2);
  double value = M_PI;
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  if (coef == "-") {
    value = -value;
  } else if (!coef.empty() && coef != "+") {
    value *= plain_number(coef, text);
  }
  if (!rest.empty()) {
    const char op = rest.front();
    rest.remove_prefix(1);
    if (op == '/') {
      const double d = plain_number(rest, text);
      if (d == 0.0) throw std::invalid_argument("division by zero: '" + std::string(text) + "'");
      value /= d;
    } else if (op == '*') {
      value *= plain_number(rest, text);
    } else {
      throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
  }
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_number(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> ScenarioConfig::x_grid() const {
  return xs.empty() ? std::vector<double>{M_PI / 8, M_PI / 4, M_PI / 2} : xs;
}
std::vector<double> ScenarioConfig::y_grid() const { return ys.empty() ? x_grid() : ys; }
std::vector<double> ScenarioConfig::tau_grid() const {
  return taus.empty() ? std::vector<double>{-M_PI / 2, 0.0, 1.0, M_PI / 2} : taus;
}
std::vector<double> ScenarioConfig::t_grid() const { return ts.empty() ? std::vector<double>{T, T + 0.5 * H} : ts; }

void validate(const ScenarioConfig& cfg) {
  if (!std::isfinite(cfg.T) || cfg.T < 1000.0) throw ConfigError("T", "must be >= 1000");
  if (cfg.T > 1e9) throw ConfigError("T", "must be <= 1e9");
  if (!(cfg.H > 0.0) || !(cfg.H <= cfg.T)) throw ConfigError("H", "must satisfy 0 < H <= T");
  for (const double x : cfg.x_grid()) {
    if (!(x > 0.0 && x <= M_PI / 2)) throw ConfigError("x", "values must lie in (0, pi/2]");
  }
  for (const double y : cfg.y_grid()) {
    if (!(y > 0.0 && y <= M_PI / 2)) throw ConfigError("y", "values must lie in (0, pi/2]");
  }
  for (const double tau : cfg.tau_grid()) {
    if (!(std::fabs(tau) <= M_PI)) throw ConfigError("tau", "values must lie in [-pi, pi]");
  }
  for (const double t : cfg.t_grid()) {
    if (!(t >= kKernelMin && t <= kKernelMax)) throw ConfigError("t", "values must lie in [50, 2.6e10]");
  }
  if (cfg.remainder_order < 1 || cfg.remainder_order > 2) {
    throw ConfigError("remainder-order", "must be 1 or 2 (the suites need at least one correction term)");
  }
  if (cfg.oracle_digits < 15 || cfg.oracle_digits > 30) throw ConfigError("oracle-digits", "must lie in [15, 30]");
  const VerifyConfig& v = cfg.verify;
  if (!(v.quad.rel_tol > 0.0 && v.quad.rel_tol < 1e-3)) throw ConfigError("rel-tol", "must lie in (0, 1e-3)");
  if (!(v.zero_tol > 0.0 && v.zero_tol <= 1e-3)) throw ConfigError("zero-tol", "must lie in (0, 1e-3]");
  if (!(v.safety > 0.0) || !std::isfinite(v.safety)) throw ConfigError("safety", "must be positive");
  if (!(v.epsilon >= 0.0 && v.epsilon < 1.0)) throw ConfigError("epsilon", "must lie in [0, 1)");
  check_band(v.t1, "band-t1");
  check_band(v.t2, "band-t2");
  check_band(v.lemma2, "band-lemma2");
  if (!(v.ladder_step > 0.0 && v.ladder_step < 1e-3)) throw ConfigError("ladder-step", "must lie in (0, 1e-3)");
  if (includes(cfg.command, Command::ladder) && v.ladder_extent * cfg.H > cfg.T / std::log(cfg.T)) {
    throw ConfigError("H", "ladder range 1.5 H exceeds T / ln T");
  }
  if (cfg.command == Command::bench && (cfg.bench_n < 1 || cfg.bench_n > 100000000)) {
    throw ConfigError("n", "must lie in [1, 1e8]");
  }
  if (cfg.threads < 1) throw ConfigError("threads", "must be >= 1");
}

unsigned threads_from_environment() {
  const char* env = std::getenv("ZLAW_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  const std::string_view s(env);
  unsigned n = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 1 || n > 4096) {
    throw ConfigError("threads", "ZLAW_THREADS must be an integer in [1, 4096], got '" + std::string(s) + "'");
  }
  return n;
}

RunResult run_scenario(const ScenarioConfig& cfg_in) {
  ScenarioConfig cfg = cfg_in;
  cfg.verify.eval.remainder_order = cfg.remainder_order;
  cfg.verify.eval.oracle_digits = cfg.oracle_digits;
  cfg.verify.quad.eval = cfg.verify.eval;
  validate(cfg);

  RunResult out;
  RunMetadata& m = out.metadata;
  m.version = "zlaw 1.0.0";
  m.command = std::string(command_name(cfg.command));
  m.config = {
      {"T", format_number(cfg.T)},
      {"H", format_number(cfg.H)},
      {"x", join(cfg.x_grid())},
      {"y", join(cfg.y_grid())},
      {"tau", join(cfg.tau_grid())},
      {"t", join(cfg.t_grid())},
      {"parity", std::string(parity_name(cfg.parity))},
      {"remainder_order", std::to_string(cfg.remainder_order)},
      {"oracle_digits", std::to_string(cfg.oracle_digits)},
      {"rel_tol", format_number(cfg.verify.quad.rel_tol)},
      {"zero_tol", format_number(cfg.verify.zero_tol)},
      {"epsilon", format_number(cfg.verify.epsilon)},
      {"safety", format_number(cfg.verify.safety)},
      {"sum_constant", format_number(cfg.verify.sum_constant)},
      {"band_t1", format_number(cfg.verify.t1.lo) + "," + format_number(cfg.verify.t1.hi)},
      {"band_t2", format_number(cfg.verify.t2.lo) + "," + format_number(cfg.verify.t2.hi)},
      {"band_lemma2", format_number(cfg.verify.lemma2.lo) + "," + format_number(cfg.verify.lemma2.hi)},
      {"ladder_step", format_number(cfg.verify.ladder_step)},
      {"seed", std::to_string(cfg.seed)},
  };
  if (cfg.command == Command::bench) m.config.emplace_back("n", std::to_string(cfg.bench_n));

  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t evals_before = z_evaluation_count();

  if (cfg.command == Command::bench) {
    out.rows = bench_rows(cfg);
  } else {
    const WindowSpec w{cfg.T, cfg.H, cfg.parity};
    Workspace ws(w, cfg.verify);
    std::vector<Cell> cells;
    auto add = [&](std::vector<Cell> more) {
      for (Cell& c : more) cells.push_back(std::move(c));
    };
    const Command c = cfg.command;
    // The ladder cells are the longest; queue them first so no worker idles at the end.
    if (includes(c, Command::ladder)) {
      add(third_order_cells(ws, cfg.x_grid()));
      add(ladder_check_cells(ws, cfg.seed));
    }
    if (includes(c, Command::eval)) add(kernel_cells(ws, cfg.t_grid()));
    if (includes(c, Command::nupoints)) add(nupoint_cells(ws, cfg.tau_grid(), cfg.x_grid()));
    if (includes(c, Command::sets)) add(set_cells(ws, cfg.x_grid()));
    if (includes(c, Command::verify_t1)) add(mean_value_cells(ws, cfg.x_grid(), cfg.y_grid()));
    if (includes(c, Command::verify_t2)) add(signum_cells(ws, cfg.x_grid()));
    if (includes(c, Command::verify_lemmas)) {
      add(nu_sum_cells(ws, cfg.tau_grid()));
      add(consistency_cells(ws, cfg.x_grid()));
    }
    if (includes(c, Command::verify_hl)) add(hardy_littlewood_cells(ws));
    out.rows = run_cells(cells, w, cfg.threads, !cfg.deterministic);
  }

  std::stable_sort(out.rows.begin(), out.rows.end(), [](const VerificationReport& a, const VerificationReport& b) {
    if (a.scenario != b.scenario) return a.scenario < b.scenario;
    return params_less(a.params, b.params);
  });
  if (cfg.deterministic) {
    for (auto& r : out.rows) r.seconds = 0.0;
  }
  m.z_evaluations = z_evaluation_count() - evals_before;
  m.wall_seconds =
      cfg.deterministic ? 0.0 : std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int exit_status(const RunResult& r) {
  for (const auto& row : r.rows) {
    if (!row.pass) return 2;
  }
  return 0;
}

}  // namespace zlaw
