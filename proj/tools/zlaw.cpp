// zlaw: evaluate Z, build the Gram-point sets and run the verification suites.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zlaw/errors.hpp"
#include "zlaw/report.hpp"
#include "zlaw/scenario.hpp"

namespace {

struct RawOptions {
  std::string T, H, x, y, tau, t, parity = "all";
  std::string rel_tol, zero_tol, safety, epsilon, ladder_step;
  std::string band_t1, band_t2, band_lemma2;
  std::string output, format = "csv";
  int remainder_order = 2;
  int oracle_digits = 15;
  long n = 10000;
  std::uint64_t seed = 20140301;
  bool deterministic = false;
  bool list = false;
};

double number_field(const std::string& text, const char* field) {
  try {
    return zlaw::parse_number(text);
  } catch (const std::invalid_argument& e) {
    throw zlaw::ConfigError(field, e.what());
  }
}

std::vector<double> list_field(const std::string& text, const char* field) {
  try {
    return zlaw::parse_list(text);
  } catch (const std::invalid_argument& e) {
    throw zlaw::ConfigError(field, e.what());
  }
}

zlaw::Band band_field(const std::string& text, const char* field) {
  const std::vector<double> v = list_field(text, field);
  if (v.size() != 2) throw zlaw::ConfigError(field, "expected lo,hi");
  return {v[0], v[1]};
}

zlaw::ScenarioConfig to_config(zlaw::Command command, const RawOptions& o) {
  zlaw::ScenarioConfig c;
  c.command = command;
  if (!o.T.empty()) c.T = number_field(o.T, "T");
  if (!o.H.empty()) c.H = number_field(o.H, "H");
  if (!o.x.empty()) c.xs = list_field(o.x, "x");
  if (!o.y.empty()) c.ys = list_field(o.y, "y");
  if (!o.tau.empty()) c.taus = list_field(o.tau, "tau");
  if (!o.t.empty()) c.ts = list_field(o.t, "t");
  if (o.parity == "all") {
    c.parity = zlaw::Parity::all;
  } else if (o.parity == "even") {
    c.parity = zlaw::Parity::even;
  } else if (o.parity == "odd") {
    c.parity = zlaw::Parity::odd;
  } else {
    throw zlaw::ConfigError("parity", "expected all, even or odd");
  }
  c.remainder_order = o.remainder_order;
  c.oracle_digits = o.oracle_digits;
  if (!o.rel_tol.empty()) c.verify.quad.rel_tol = number_field(o.rel_tol, "rel-tol");
  if (!o.zero_tol.empty()) c.verify.zero_tol = number_field(o.zero_tol, "zero-tol");
  if (!o.safety.empty()) c.verify.safety = number_field(o.safety, "safety");
  if (!o.epsilon.empty()) c.verify.epsilon = number_field(o.epsilon, "epsilon");
  if (!o.ladder_step.empty()) c.verify.ladder_step = number_field(o.ladder_step, "ladder-step");
  if (!o.band_t1.empty()) c.verify.t1 = band_field(o.band_t1, "band-t1");
  if (!o.band_t2.empty()) c.verify.t2 = band_field(o.band_t2, "band-t2");
  if (!o.band_lemma2.empty()) c.verify.lemma2 = band_field(o.band_lemma2, "band-lemma2");
  c.bench_n = o.n;
  c.seed = o.seed;
  c.output_path = o.output;
  if (o.format == "csv") {
    c.format = zlaw::Format::csv;
  } else if (o.format == "json") {
    c.format = zlaw::Format::json;
  } else {
    throw zlaw::ConfigError("format", "expected csv or json");
  }
  c.deterministic = o.deterministic;
  c.threads = zlaw::threads_from_environment();
  return c;
}

// nupoints --list: the points themselves rather than the law checks.
void write_points(std::ostream& os, const zlaw::ScenarioConfig& c) {
  const zlaw::WindowSpec w{c.T, c.H, c.parity};
  zlaw::validate(w);
  os << "nu,tau,t\n";
  for (const double tau : c.tau_grid()) {
    for (const zlaw::NuPoint& p : zlaw::enumerate_window(w, tau)) {
      os << p.nu << ',' << zlaw::format_number(p.tau) << ',' << zlaw::format_number(p.t) << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy Z: Riemann-Siegel evaluation, Gram-point sets and mean-value verification"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RawOptions o;
  struct Sub {
    zlaw::Command command;
    const char* help;
  };
  const Sub subs[] = {
      {zlaw::Command::eval, "Z(t) by Riemann-Siegel against the Euler-Maclaurin oracle"},
      {zlaw::Command::nupoints, "Shifted Gram points: count, spacing and window-width laws"},
      {zlaw::Command::sets, "Measures of G1(x), G2(x), the pi/2 tiling and the zero count"},
      {zlaw::Command::verify_t1, "Mean value of Z over G1(x), G2(y) and their union"},
      {zlaw::Command::verify_t2, "Signum-area law over G1(x) u G2(x)"},
      {zlaw::Command::verify_lemmas, "Plain, alternating and parity sums of Z at shifted Gram points"},
      {zlaw::Command::verify_hl, "Integral of Z over the whole window"},
      {zlaw::Command::ladder, "Numerical ladder phi and the third-order formulae"},
      {zlaw::Command::bench, "Throughput of the Z kernel and its error on an oracle subsample"},
      {zlaw::Command::all, "Every suite except bench"},
  };
  std::optional<zlaw::Command> chosen;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(std::string(zlaw::command_name(s.command)), s.help);
    sub->add_option("--T", o.T, "Window start (default 1e6)");
    sub->add_option("--H", o.H, "Window length (default 1e3)");
    sub->add_option("--x", o.x, "Half-widths in (0, pi/2], comma-separated (default pi/8,pi/4,pi/2)");
    sub->add_option("--y", o.y, "Half-widths of G2 for the union check (default: --x)");
    sub->add_option("--tau", o.tau, "Shifts in [-pi, pi] (default -pi/2,0,1,pi/2)");
    sub->add_option("--t", o.t, "Abscissae for eval (default T, T + H/2)");
    sub->add_option("--parity", o.parity, "Index parity of the nu-points: all, even, odd");
    sub->add_option("--remainder-order", o.remainder_order, "Riemann-Siegel correction terms, 1 or 2");
    sub->add_option("--oracle-digits", o.oracle_digits, "Oracle precision in decimal digits");
    sub->add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance (default 1e-10)");
    sub->add_option("--zero-tol", o.zero_tol, "Zero bracketing width (default 1e-9)");
    sub->add_option("--safety", o.safety, "Multiplier on every error budget (default 1)");
    sub->add_option("--epsilon", o.epsilon, "Exponent slack in T^(1/6 + epsilon) (default 0.05)");
    sub->add_option("--band-t1", o.band_t1, "Ratio band lo,hi for the mean-value cells");
    sub->add_option("--band-t2", o.band_t2, "Ratio band lo,hi for the signum-area cells");
    sub->add_option("--band-lemma2", o.band_lemma2, "Ratio band lo,hi for the alternating sums");
    sub->add_option("--ladder-step", o.ladder_step, "Ladder panel tolerance (default 1e-13)");
    sub->add_option("--n", o.n, "bench: number of evaluations");
    sub->add_option("--seed", o.seed, "Seed for the random abscissae of bench and ladder");
    sub->add_option("--output", o.output, "Report path (default stdout)");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_flag("--deterministic", o.deterministic, "Report zero for every timing");
    if (s.command == zlaw::Command::nupoints) sub->add_flag("--list", o.list, "Print the points instead");
    sub->callback([&chosen, c = s.command] { chosen = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const zlaw::ScenarioConfig cfg = to_config(*chosen, o);
    std::ofstream file;
    if (!cfg.output_path.empty()) {
      file.open(cfg.output_path);
      if (!file) {
        std::cerr << "zlaw: cannot open " << cfg.output_path << " for writing\n";
        return 1;
      }
    }
    std::ostream& os = cfg.output_path.empty() ? std::cout : file;

    if (o.list) {
      zlaw::validate(cfg);
      write_points(os, cfg);
      return os.good() ? 0 : 1;
    }
    const zlaw::RunResult result = zlaw::run_scenario(cfg);
    zlaw::write_report(os, result, cfg.format);
    os.flush();
    if (!os) {
      std::cerr << "zlaw: write failed\n";
      return 1;
    }
    return zlaw::exit_status(result);
  } catch (const zlaw::ConfigError& e) {
    std::cerr << "zlaw: invalid configuration: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "zlaw: " << e.what() << '\n';
    return 1;
  }
}
