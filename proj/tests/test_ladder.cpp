#include <cmath>
#include <random>

#include "doctest.h"
#include "zlaw/errors.hpp"
#include "zlaw/ladder.hpp"
#include "zlaw/quad.hpp"
#include "zlaw/verify.hpp"

using namespace zlaw;

namespace {

const LadderGrid& grid() {
  static const LadderGrid g = build_ladder(1e6, 1e6 + 300.0);
  return g;
}

}  // namespace

TEST_CASE("omega") {
  CHECK(omega(std::exp(10.0)) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(omega(1e6) == doctest::Approx(0.072382413650542).epsilon(1e-12));
  double prev = omega(50.0);
  for (double t = 60.0; t < 1e9; t *= 1.7) {
    CHECK(omega(t) < prev);
    prev = omega(t);
  }
  CHECK_THROWS_AS(omega(49.0), DomainError);
}

TEST_CASE("build_ladder preconditions") {
  CHECK_THROWS_AS(build_ladder(40.0, 100.0), DomainError);
  CHECK_THROWS_AS(build_ladder(1e4, 1e4), DomainError);
  CHECK_THROWS_AS(build_ladder(1e4, 1e4 + 2000.0), DomainError);
}

TEST_CASE("grid is anchored and strictly increasing") {
  const LadderGrid& g = grid();
  CHECK(g.phi_lo() == 1e6);
  CHECK(g.t_lo() == 1e6);
  CHECK(g.t_hi() == 1e6 + 300.0);
  const auto ts = g.ts();
  const auto ph = g.phis();
  REQUIRE(ts.size() == ph.size());
  for (std::size_t i = 1; i < ts.size(); ++i) {
    CHECK(ts[i] > ts[i - 1]);
    CHECK(ph[i] > ph[i - 1]);
  }
  CHECK(g.omega_mode() == OmegaMode::inverse_log);
}

TEST_CASE("cumulative values agree with direct quadrature") {
  const LadderGrid& g = grid();
  // mpmath quad of siegelz^2 / log on [1e6, 1e6 + 1].
  // Kernel error e perturbs the integral by at most 2 e sqrt(omega * I) + omega e^2 (Cauchy-Schwarz).
  const double ref = 0.39397514207598474728;
  const double e = rs_z(1e6).err_bound;
  const double tol = 2 * e * std::sqrt(omega(1e6) * ref) + omega(1e6) * e * e + 1e-12;
  CHECK(std::fabs((g.phi(DoubleDouble(1e6 + 1)) - DoubleDouble(1e6)).to_double() - ref) <= tol);

  const Integrand f = [](const DoubleDouble& t) {
    const double z = rs_z(t).value;
    return omega(t.hi) * z * z;
  };
  const auto ts = g.ts();
  const auto ph = g.phis();
  for (const std::size_t k : {ts.size() / 7, ts.size() / 2, ts.size() - 1}) {
    const IntegralResult r = integrate(f, ts[0], ts[k], initial_panels(ts[0], ts[k], 8.0));
    CHECK(std::fabs((ph[k] - ph[0]) / r.value - 1.0) <= 1e-8);
  }
}

TEST_CASE("average slope near one") {
  const LadderGrid g = build_ladder(1e6, 1e6 + 1e3);
  const double slope = (g.phi_hi() - g.phi_lo()) / (g.t_hi() - g.t_lo());
  CHECK(slope >= 0.8);
  CHECK(slope <= 1.2);
}

TEST_CASE("reverse point round trip") {
  const LadderGrid& g = grid();
  CHECK(reverse_point(g.phi_lo(), g) == g.t_lo());
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(g.phi_lo(), g.phi_hi());
  const auto ts = g.ts();
  const auto ph = g.phis();
  for (int i = 0; i < 100; ++i) {
    const double y = u(rng);
    const double t = reverse_point(y, g);
    CHECK(std::fabs((g.phi(DoubleDouble(t)) - DoubleDouble(y)).to_double()) <= 1e-8);
    const auto k = static_cast<std::size_t>(std::upper_bound(ph.begin(), ph.end(), y) - ph.begin());
    if (k > 0 && k < ph.size() && y > ph[k - 1]) {
      CHECK(t >= ts[k - 1]);
      CHECK(t <= ts[k]);
    }
  }
  CHECK_THROWS_AS(reverse_point(g.phi_lo() - 1.0, g), CoverageError);
  CHECK_THROWS_AS(reverse_point(g.phi_hi() + 1.0, g), CoverageError);
}

TEST_CASE("substitution identity with random indicator combinations") {
  const LadderGrid& g = grid();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(g.phi_lo() + 1.0, g.phi_hi() - 1.0);
  QuadConfig qc;
  const auto one = [](const DoubleDouble&) { return 1.0; };
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Interval> pieces;
    for (int i = 0; i < 4; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      pieces.push_back({a, b});
    }
    const DisjointIntervalSet s = DisjointIntervalSet::normalized(pieces);
    const IntegralResult r = integrate_pulled_back(one, pull_back(s, g), g, qc);
    CHECK(std::fabs(r.value / s.measure() - 1.0) <= 1e-6);
  }
}

TEST_CASE("third-order identity on a window") {
  const WindowSpec w{1e6, 150.0};
  const auto reports = verify_third_order(w, {M_PI / 4});
  for (const auto& r : reports) {
    INFO(r.scenario, " observed=", r.observed, " predicted=", r.predicted, " budget=", r.error_budget);
    CHECK_FALSE(r.error);
    if (r.scenario == "ladder_indicator") CHECK(std::fabs(r.ratio - 1.0) <= 1e-6);
    if (r.scenario.find("identity") != std::string::npos) CHECK(r.pass_budget);
  }
}

TEST_CASE("pullback outside the grid is a coverage error") {
  const WindowSpec w{1e6, 1e3};
  auto small = std::make_shared<const LadderGrid>(build_ladder(1e6, 1e6 + 100.0));
  const auto reports = verify_third_order(w, {M_PI / 4}, small);
  REQUIRE(!reports.empty());
  CHECK(reports.back().error);
  CHECK(reports.back().message.find("outside the ladder range") != std::string::npos);
}
