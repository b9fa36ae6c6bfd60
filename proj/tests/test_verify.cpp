#include <atomic>
#include <cstring>
#include <cmath>
#include <thread>

#include "doctest.h"
#include "zlaw/errors.hpp"
#include "zlaw/verify.hpp"

using namespace zlaw;

namespace {

const WindowSpec kWindow{1e6, 1e3};

// One workspace for the whole file: sets, integrals and partitions are shared.
Workspace& workspace() {
  static Workspace ws(kWindow, VerifyConfig{});
  return ws;
}

std::vector<VerificationReport> run(std::vector<Cell> cells) { return run_cells(cells, kWindow, 1, false); }

const VerificationReport& find(const std::vector<VerificationReport>& rs, const std::string& scenario,
                               std::vector<double> params) {
  for (const auto& r : rs) {
    if (r.scenario == scenario && r.params == params) return r;
  }
  FAIL("no row " << scenario);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("settle: band or budget") {
  VerificationReport r;
  r.band = {0.9, 1.1};
  r.observed = 1.05;
  r.predicted = 1.0;
  r.error_budget = 0.01;
  settle(r);
  CHECK(r.ratio == doctest::Approx(1.05));
  CHECK(r.pass_band);
  CHECK_FALSE(r.pass_budget);
  CHECK(r.pass);

  r.observed = 1.5;
  r.error_budget = 0.6;
  settle(r);
  CHECK_FALSE(r.pass_band);
  CHECK(r.pass_budget);
  CHECK(r.pass);

  r.safety = 0.5;
  settle(r);
  CHECK_FALSE(r.pass);

  VerificationReport z;
  z.predicted = 0.0;
  z.observed = 0.3;
  z.error_budget = 0.5;
  settle(z);
  CHECK(std::isnan(z.ratio));
  CHECK_FALSE(z.pass_band);
  CHECK(z.pass);

  z.error = true;
  settle(z);
  CHECK_FALSE(z.pass);
}

TEST_CASE("run_cells: order, errors and thread independence") {
  std::vector<Cell> cells;
  for (int i = 0; i < 12; ++i) {
    cells.push_back({"c", "i", {double(i)}, [i] {
                       if (i == 5) throw DomainError("boom");
                       VerificationReport r;
                       r.scenario = "c";
                       r.params = {double(i)};
                       r.observed = i;
                       return std::vector{r};
                     }});
  }
  const auto one = run_cells(cells, kWindow, 1, false);
  const auto many = run_cells(cells, kWindow, 4, false);
  REQUIRE(one.size() == 12);
  REQUIRE(many.size() == 12);
  for (int i = 0; i < 12; ++i) {
    CHECK(one[i].params[0] == i);
    CHECK(many[i].params[0] == i);
    CHECK(one[i].seconds == 0.0);
  }
  CHECK(one[5].error);
  CHECK_FALSE(one[5].pass);
  CHECK(one[5].message == "boom");
  CHECK(one[5].T == kWindow.T);
}

TEST_CASE("memo computes each key once under contention") {
  Memo<int, int> memo;
  std::atomic<int> calls{0};
  std::vector<std::thread> pool;
  std::atomic<int> sum{0};
  for (int k = 0; k < 8; ++k) {
    pool.emplace_back([&] {
      sum += memo.get(1, [&] {
        ++calls;
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
        return 7;
      });
    });
  }
  for (auto& t : pool) t.join();
  CHECK(calls == 1);
  CHECK(sum == 56);
}

TEST_CASE("mean value over G1 and G2 at 1e6") {
  const auto rs = run(mean_value_cells(workspace(), {M_PI / 4, M_PI / 2}, {M_PI / 4, M_PI / 2}));
  for (const double x : {M_PI / 4, M_PI / 2}) {
    const auto& g1 = find(rs, "t1_g1", {x});
    CHECK(g1.ratio >= 0.8);
    CHECK(g1.ratio <= 1.2);
    CHECK(g1.predicted == doctest::Approx(2 / M_PI * 1e3 * std::sin(x)));
    const auto& g2 = find(rs, "t1_g2", {x});
    CHECK(g2.observed < 0.0);
    CHECK(g2.ratio >= 0.8);
    CHECK(g2.ratio <= 1.2);
    CHECK(find(rs, "t1_g1_normalized", {x}).predicted == doctest::Approx(2 * std::sin(x) / x));
    // Equal half-widths cancel the main term.
    const auto& u = find(rs, "t1_union", {x, x});
    CHECK(u.predicted == 0.0);
    CHECK(std::fabs(u.observed) <= u.error_budget);
  }
  for (const auto& r : rs) CHECK(r.pass);
}

TEST_CASE("normalized main term near x = 0") {
  Workspace ws(WindowSpec{1e5, 50.0}, VerifyConfig{});
  const auto rs = run(mean_value_cells(ws, {0.1}, {}));
  CHECK(find(rs, "t1_g1_normalized", {0.1}).predicted == doctest::Approx(1.9966683329365).epsilon(1e-12));
}

TEST_CASE("grids are validated") {
  CHECK_THROWS_AS(mean_value_cells(workspace(), {0.0}, {}), DomainError);
  CHECK_THROWS_AS(signum_cells(workspace(), {2.0}), DomainError);
  CHECK_THROWS_AS(nu_sum_cells(workspace(), {4.0}), DomainError);
}

TEST_CASE("signum areas at 1e6") {
  const auto rs = run(signum_cells(workspace(), {M_PI / 4, M_PI / 2}));
  for (const double x : {M_PI / 4, M_PI / 2}) {
    const auto& s = find(rs, "t2_signum_ratio", {x});
    CHECK(s.observed > 0.0);
    CHECK(s.predicted > 0.0);
    CHECK(s.ratio >= 0.8);
    CHECK(s.ratio <= 1.25);
    const auto& d = find(rs, "t2_decomposition", {x});
    CHECK(std::fabs(d.observed - d.predicted) <= d.error_budget);
  }
}

TEST_CASE("Gram-point sums at 1e6") {
  const auto rs = run(nu_sum_cells(workspace(), {0.0, 1.0, M_PI / 2}));
  const double scale = 1e3 * std::log(1e6 / (2 * M_PI));
  for (const double tau : {0.0, 1.0}) {
    const auto& a = find(rs, "lemma2_alternating", {tau});
    CHECK(a.predicted == doctest::Approx(scale / M_PI * std::cos(tau)));
    CHECK(a.ratio >= 0.9);
    CHECK(a.ratio <= 1.1);
  }
  CHECK(std::fabs(find(rs, "lemma2_alternating", {M_PI / 2}).observed) <= 0.05 * scale);
  CHECK(std::fabs(find(rs, "lemma1_sum", {0.0}).observed) <= 0.05 * scale / M_PI);
  for (const double tau : {0.0, 1.0, M_PI / 2}) {
    const double plain = find(rs, "lemma1_sum", {tau}).observed;
    const double even = find(rs, "parity_even", {tau}).observed;
    const double odd = find(rs, "parity_odd", {tau}).observed;
    const double alt = find(rs, "lemma2_alternating", {tau}).observed;
    CHECK(std::fabs(even + odd - plain) <= 1e-10 * scale);
    CHECK(std::fabs(even - odd - alt) <= 1e-10 * scale);
  }
  for (const auto& r : rs) CHECK(r.pass);
}

TEST_CASE("tau integral of the even sum against the G1 integral") {
  const auto rs = run(consistency_cells(workspace(), {M_PI / 4}));
  REQUIRE(rs.size() == 1);
  CHECK(std::fabs(rs[0].ratio - 1.0) <= 0.05);
}

TEST_CASE("whole-window integral and tiling at 1e6") {
  const auto rs = run(hardy_littlewood_cells(workspace()));
  const auto& hl = find(rs, "hl_ratio", {});
  CHECK(std::fabs(hl.observed) <= 0.05);
  const auto& tiling = find(rs, "hl_tiling", {});
  CHECK(std::fabs(tiling.ratio - 1.0) <= 1e-6);
}

TEST_CASE("reports do not depend on the thread count") {
  const WindowSpec w{2e5, 40.0};
  auto cells_for = [&](Workspace& ws) {
    std::vector<Cell> cells = mean_value_cells(ws, {0.5, 1.0}, {0.7});
    for (auto& c : signum_cells(ws, {0.5, 1.0})) cells.push_back(std::move(c));
    for (auto& c : nu_sum_cells(ws, {0.0, 0.4})) cells.push_back(std::move(c));
    for (auto& c : hardy_littlewood_cells(ws)) cells.push_back(std::move(c));
    return cells;
  };
  Workspace a(w, VerifyConfig{}), b(w, VerifyConfig{});
  const auto one = run_cells(cells_for(a), w, 1, false);
  const auto many = run_cells(cells_for(b), w, 4, false);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].scenario == many[i].scenario);
    CHECK(std::memcmp(&one[i].observed, &many[i].observed, sizeof(double)) == 0);
    CHECK(one[i].n_evals == many[i].n_evals);
  }
}
