#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "zlaw/report.hpp"
#include "zlaw/scenario.hpp"

using namespace zlaw;

TEST_CASE("numbers: plain, scientific and multiples of pi") {
  CHECK(parse_number("1e6") == 1e6);
  CHECK(parse_number("2.5E-3") == 2.5e-3);
  CHECK(parse_number("-7") == -7.0);
  CHECK(parse_number("pi") == M_PI);
  CHECK(parse_number("pi/2") == M_PI / 2);
  CHECK(parse_number("-pi/4") == -M_PI / 4);
  CHECK(parse_number("3pi/4") == 3 * M_PI / 4);
  CHECK(parse_number("3*pi/4") == 3 * M_PI / 4);
  CHECK(parse_number("pi*0.25") == M_PI * 0.25);
  CHECK(parse_number(" pi/8 ") == M_PI / 8);
  for (const char* bad : {"", "abc", "1e", "pi/", "pi/0", "2pie", "1,5", "pi^2"}) {
    CHECK_THROWS_AS(parse_number(bad), std::invalid_argument);
  }
}

TEST_CASE("lists") {
  const auto v = parse_list("pi/4,pi/2, 1");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == M_PI / 4);
  CHECK(v[2] == 1.0);
  CHECK_THROWS_AS(parse_list("pi/4,,1"), std::invalid_argument);
}

TEST_CASE("commands") {
  for (const char* name :
       {"eval", "nupoints", "sets", "verify-t1", "verify-t2", "verify-lemmas", "verify-hl", "ladder", "bench", "all"}) {
    const auto c = parse_command(name);
    REQUIRE(c.has_value());
    CHECK(command_name(*c) == name);
  }
  CHECK_FALSE(parse_command("verify").has_value());
}

TEST_CASE("configuration is validated field by field") {
  auto field_of = [](ScenarioConfig c) -> std::string {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      return e.field;
    }
    return "";
  };
  CHECK(field_of(ScenarioConfig{}).empty());
  ScenarioConfig c;
  c.T = 10;
  CHECK(field_of(c) == "T");
  c = {};
  c.H = -1;
  CHECK(field_of(c) == "H");
  c = {};
  c.xs = {2.0};
  CHECK(field_of(c) == "x");
  c = {};
  c.taus = {4.0};
  CHECK(field_of(c) == "tau");
  c = {};
  c.remainder_order = 0;
  CHECK(field_of(c) == "remainder-order");
  c = {};
  c.verify.t1 = {1.2, 0.8};
  CHECK(field_of(c) == "band-t1");
  c = {};
  c.command = Command::ladder;
  c.T = 1e4;
  c.H = 1e3;
  CHECK(field_of(c) == "H");
}

TEST_CASE("number formatting round-trips") {
  for (const double v : {0.1, 1e6, -3.25, 1.0 / 3.0, 6.02214076e23, 5e-324}) {
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("CSV report layout") {
  ScenarioConfig c;
  c.command = Command::eval;
  c.ts = {1e4};
  c.deterministic = true;
  const RunResult r = run_scenario(c);
  std::ostringstream os;
  write_csv(os, r);
  const std::string text = os.str();
  std::istringstream is(text);
  std::string line, header;
  int data = 0;
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (header.empty()) {
      header = line;
      continue;
    }
    ++data;
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
  }
  CHECK(header == "scenario,T,H,param_name,param_value,observed,predicted,ratio,error_budget,pass,n_evals,seconds");
  CHECK(data == 2);
  CHECK(text.find("# wall_seconds: 0\n") != std::string::npos);
  CHECK(exit_status(r) == 0);
}

TEST_CASE("rows are sorted by scenario then parameters") {
  ScenarioConfig c;
  c.command = Command::nupoints;
  c.T = 1e5;
  c.H = 50;
  c.taus = {1.0, -1.0, 0.0};
  c.xs = {1.0, 0.5};
  const RunResult r = run_scenario(c);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto& a = r.rows[i - 1];
    const auto& b = r.rows[i];
    CHECK((a.scenario < b.scenario || (a.scenario == b.scenario && a.params <= b.params)));
  }
}

TEST_CASE("JSON report carries metadata and one object per row") {
  ScenarioConfig c;
  c.command = Command::sets;
  c.T = 1e5;
  c.H = 30;
  c.xs = {0.5};
  const RunResult r = run_scenario(c);
  std::ostringstream os;
  write_json(os, r);
  const std::string text = os.str();
  CHECK(text.find("\"metadata\"") != std::string::npos);
  CHECK(text.find("\"z_evaluations\"") != std::string::npos);
  std::size_t n = 0;
  for (std::size_t at = text.find("\"scenario\""); at != std::string::npos; at = text.find("\"scenario\"", at + 1)) ++n;
  CHECK(n == r.rows.size());
}

TEST_CASE("exit status reflects failures") {
  RunResult r;
  r.rows.resize(2);
  r.rows[0].pass = r.rows[1].pass = true;
  CHECK(exit_status(r) == 0);
  r.rows[1].pass = false;
  CHECK(exit_status(r) == 2);
}
