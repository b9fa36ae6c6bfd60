#include <cmath>
#include <random>

#include "doctest.h"
#include "zlaw/errors.hpp"
#include "zlaw/nupoints.hpp"
#include "zlaw/special.hpp"

using namespace zlaw;

TEST_CASE("first Gram point") {
  // mpmath: findroot(siegeltheta(t) - pi) = 23.17028270124630927899664
  const NuPoint p = solve_nu_point(1, 0.0);
  CHECK(p.nu == 1);
  CHECK(std::fabs(p.t - 23.17028270124630927899664) <= 1e-11);
  // siegeltheta(t) = 100 pi at 238.5825905145029233256009
  CHECK(std::fabs(solve_nu_point(100, 0.0).t - 238.5825905145029233256009) <= 1e-11);
}

TEST_CASE("theta round trip at solved points") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> nu(1, 2000000);
  std::uniform_real_distribution<double> tau(-M_PI, M_PI);
  for (int i = 0; i < 300; ++i) {
    const NuPoint p = solve_nu_point(nu(rng), tau(rng));
    const DoubleDouble target = nu_target(p.nu, p.tau);
    CHECK(std::fabs((theta(p.t).phase - target).to_double()) <= 1e-10 * target.hi);
  }
  // Absolute 1e-9 holds while theta' * ulp(t) / 2 stays below it.
  const NuPoint p = solve_nu_point(100, 0.0);
  CHECK(std::fabs(theta(p.t).value - 100 * M_PI) <= 1e-9);
}

TEST_CASE("shift by half a turn links neighbouring indices") {
  for (const long k : {1L, 17L, 5000L, 954321L}) {
    CHECK(solve_nu_point(2 * k, M_PI / 2).t == solve_nu_point(2 * k + 1, -M_PI / 2).t);
  }
}

TEST_CASE("unshifted points are the Gram points") {
  for (const long nu : {3L, 40L, 123456L}) {
    CHECK(solve_nu_point(nu, 0.0).t == solve_nu_point(nu, 0.0, 1e5).t);
  }
}

TEST_CASE("monotone in nu and in tau") {
  double prev = 0.0;
  for (long nu = 1000; nu < 1100; ++nu) {
    const double t = solve_nu_point(nu, 0.3).t;
    CHECK(t > prev);
    prev = t;
  }
  prev = 0.0;
  for (int i = -10; i <= 10; ++i) {
    const double t = solve_nu_point(5000, i * M_PI / 10).t;
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("solver preconditions") {
  CHECK_THROWS_AS(solve_nu_point(0, 0.0), DomainError);
  CHECK_THROWS_AS(solve_nu_point(10, 3.5), DomainError);
  CHECK_THROWS_AS(validate(WindowSpec{500.0, 10.0}), DomainError);
  CHECK_THROWS_AS(validate(WindowSpec{1e4, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(WindowSpec{1e4, 2e4}), DomainError);
}

TEST_CASE("window at 1e6: count, gaps and widths") {
  const WindowSpec w{1e6, 1e3};
  const double gap = expected_gap(w.T);
  CHECK(expected_count(w) == doctest::Approx(1906.2995767240045).epsilon(1e-12));
  for (const double tau : {0.0, M_PI / 2, -M_PI / 2, 1.0}) {
    const auto pts = enumerate_window(w, tau);
    CHECK(std::fabs(static_cast<double>(pts.size()) - expected_count(w)) <= 2.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(pts[i].nu == pts[i - 1].nu + 1);
      CHECK(std::fabs((pts[i].t - pts[i - 1].t) / gap - 1.0) <= 0.05);
    }
    CHECK(pts.front().t >= w.T - kWindowEdgeTolerance);
    CHECK(pts.back().t < w.T + w.H);
  }
  const double width = 4 * (M_PI / 4) / std::log(w.T / (2 * M_PI));
  for (const NuPoint& p : enumerate_window(w, 0.0)) {
    if (p.nu % 2) continue;
    const double d = solve_nu_point(p.nu, M_PI / 4, p.t).t - solve_nu_point(p.nu, -M_PI / 4, p.t).t;
    CHECK(std::fabs(d / width - 1.0) <= 0.05);
  }
}

TEST_CASE("parity split partitions the window") {
  const WindowSpec all{2e5, 300.0, Parity::all};
  const WindowSpec even{2e5, 300.0, Parity::even};
  const WindowSpec odd{2e5, 300.0, Parity::odd};
  const auto a = enumerate_window(all, 0.4);
  const auto e = enumerate_window(even, 0.4);
  const auto o = enumerate_window(odd, 0.4);
  CHECK(e.size() + o.size() == a.size());
  std::size_t ie = 0, io = 0;
  for (const NuPoint& p : a) {
    if (p.nu % 2 == 0) {
      REQUIRE(ie < e.size());
      CHECK(e[ie++].t == p.t);
    } else {
      REQUIRE(io < o.size());
      CHECK(o[io++].t == p.t);
    }
  }
}

TEST_CASE("adjacent windows partition a longer range") {
  const auto left = enumerate_window(WindowSpec{1e5, 50.0}, 0.0);
  const auto right = enumerate_window(WindowSpec{1e5 + 50.0, 50.0}, 0.0);
  const auto both = enumerate_window(WindowSpec{1e5, 100.0}, 0.0);
  CHECK(left.size() + right.size() == both.size());
  CHECK(left.back().nu + 1 == right.front().nu);
}

TEST_CASE("a point on the left edge is included, on the right edge excluded") {
  const NuPoint p = solve_nu_point(200000, 0.0);
  const auto starts = enumerate_window(WindowSpec{p.t, 10.0}, 0.0);
  REQUIRE(!starts.empty());
  CHECK(starts.front().nu == p.nu);
  const auto ends = enumerate_window(WindowSpec{p.t - 10.0, 10.0}, 0.0);
  REQUIRE(!ends.empty());
  CHECK(ends.back().nu == p.nu - 1);
}

TEST_CASE("enumeration is deterministic") {
  const WindowSpec w{3e6, 40.0};
  const auto a = enumerate_window(w, -2.0);
  const auto b = enumerate_window(w, -2.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].t == b[i].t);
}
