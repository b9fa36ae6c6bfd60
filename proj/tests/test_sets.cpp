#include <cmath>

#include "doctest.h"
#include "zlaw/errors.hpp"
#include "zlaw/sets.hpp"
#include "zlaw/special.hpp"

using namespace zlaw;

TEST_CASE("half-width validation") {
  const WindowSpec w{1e5, 100.0};
  CHECK_THROWS_AS(build_sets(w, 0.0), DomainError);
  CHECK_THROWS_AS(build_sets(w, 1.6), DomainError);
  CHECK_THROWS_AS(build_sets(w, -0.5), DomainError);
  CHECK_NOTHROW(build_sets(w, M_PI / 2));
}

TEST_CASE("G1 and G2 are disjoint and inside the window") {
  const WindowSpec w{1e6, 1e3};
  for (const double x : {0.1, M_PI / 8, M_PI / 4, 1.2}) {
    const WindowSets s = build_sets(w, x);
    CHECK(intersect(s.g1, s.g2).measure() == 0.0);
    CHECK(s.g1.intervals().front().lo >= w.T);
    CHECK(s.g2.intervals().back().hi <= w.T + w.H);
  }
  const WindowSets s = build_sets(w, M_PI / 4, M_PI / 2);
  CHECK(intersect(s.g1, s.g2).measure() == 0.0);
}

TEST_CASE("the pi/2 sets tile the window") {
  for (const WindowSpec w : {WindowSpec{1e6, 1e3}, WindowSpec{12345.0, 77.7}, WindowSpec{5e6, 200.0}}) {
    const WindowSets s = build_sets(w, M_PI / 2);
    CHECK(std::fabs(s.g1.measure() + s.g2.measure() - w.H) <= 1e-9);
    const auto u = unite(s.g1, s.g2).intervals();
    CHECK(u.front().lo == w.T);
    CHECK(u.back().hi == w.T + w.H);
    for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i - 1].hi == u[i].lo);
  }
}

TEST_CASE("measure law at 1e6") {
  const WindowSpec w{1e6, 1e3};
  for (const double x : {M_PI / 8, M_PI / 4, M_PI / 2}) {
    const WindowSets s = build_sets(w, x);
    CHECK(std::fabs(s.g1.measure() - x * w.H / M_PI) <= 5 * x);
    CHECK(std::fabs(s.g2.measure() - x * w.H / M_PI) <= 5 * x);
  }
  CHECK(std::fabs(build_sets(w, M_PI / 2).g1.measure() / (w.H / 2) - 1.0) <= 0.02);
}

TEST_CASE("family matches build_sets") {
  const WindowSpec w{3e5, 60.0};
  const WindowSets s = build_sets(w, 0.7, 1.1);
  CHECK(build_family(w, 0.7, Parity::even) == s.g1);
  CHECK(build_family(w, 1.1, Parity::odd) == s.g2);
}

TEST_CASE("sampling step") {
  CHECK(sampling_step(1e6) == doctest::Approx(2 * M_PI / (32 * std::log(1e6 / (2 * M_PI)))));
  CHECK(sampling_step(1e6, 2.0) == doctest::Approx(sampling_step(1e6) / 2));
}

TEST_CASE("sign partition: no sign change gives one piece") {
  // Z(100) = 2.69; Z stays positive on [99.5, 100.5] (zeros at 98.83 and 101.32).
  const SignPartition p = sign_partition(DisjointIntervalSet({{99.5, 100.5}}));
  CHECK(p.zeros.empty());
  CHECK(p.plus.size() == 1);
  CHECK(p.minus.empty());
}

TEST_CASE("sign partition: known zero located") {
  // mpmath zetazero(30) = 101.31785100573139122878544794
  const SignPartition p = sign_partition(DisjointIntervalSet({{100.5, 102.0}}));
  REQUIRE(p.zeros.size() == 1);
  // A kernel error e moves the zero by at most about e / |Z'|.
  const double zero = 101.31785100573139;
  const double slope = (z_oracle(zero + 1e-4, 15).value - z_oracle(zero - 1e-4, 15).value) / 2e-4;
  CHECK(std::fabs(p.zeros[0] - zero) <= 2 * rs_z(zero).err_bound / std::fabs(slope));
}

TEST_CASE("sign partition invariants over a window") {
  const WindowSpec w{2e5, 60.0};
  const DisjointIntervalSet s = unite(build_family(w, 1.0, Parity::even), build_family(w, 1.0, Parity::odd));
  const SignPartition p = sign_partition(s);
  CHECK(intersect(p.plus, p.minus).measure() == 0.0);
  CHECK(std::fabs(p.plus.measure() + p.minus.measure() - s.measure()) <= 1e-6 * s.measure());
  for (const Interval& iv : p.plus.intervals()) CHECK(rs_z(0.5 * (iv.lo + iv.hi)).value > 0.0);
  for (const Interval& iv : p.minus.intervals()) CHECK(rs_z(0.5 * (iv.lo + iv.hi)).value < 0.0);
  for (const double z : p.zeros) {
    CHECK(std::fabs(rs_z(z).value) <= 1e-6);
    const double d = 1e-7;
    CHECK(rs_z(z - d).value * rs_z(z + d).value < 0.0);
  }
}

TEST_CASE("doubling the sampling density moves no zero") {
  const DisjointIntervalSet s({{5e5, 5e5 + 30.0}});
  const SignPartition a = sign_partition(s, kDefaultZeroTol, {}, 1.0);
  const SignPartition b = sign_partition(s, kDefaultZeroTol, {}, 2.0);
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) CHECK(std::fabs(a.zeros[i] - b.zeros[i]) < 1e-8);
}

TEST_CASE("zero count of the window tracks the Gram-point count") {
  const WindowSpec w{1e6, 1e3};
  const SignPartition p = sign_partition(DisjointIntervalSet({{w.T, w.T + w.H}}));
  const auto pts = enumerate_window(w, 0.0);
  CHECK(std::fabs(static_cast<double>(p.zeros.size()) - static_cast<double>(pts.size())) <= 5.0);
  CHECK(p.near_tangencies.empty());
}

TEST_CASE("sign partition: domain") {
  CHECK_THROWS_AS(sign_partition(DisjointIntervalSet({{10.0, 20.0}})), DomainError);
}
