#include <cmath>
#include <random>

#include "doctest.h"
#include "zlaw/errors.hpp"
#include "zlaw/special.hpp"

using namespace zlaw;

namespace {

// Reference values from mpmath (siegelz, siegeltheta) at 40 digits.
struct ZRef {
  double t;
  double z;
};
constexpr ZRef kZRef[] = {
    {100.0, 2.69269705666446347499538},
    {1000.0, 0.9977946375215866139860027},
    {10000.0, -0.3413947242312085591768904},
    {1000000.5, -0.9355806515679346730841526},
    {1000123.456, 1.158513961848958298727914},
};

double rs_tolerance(double t) { return 10.0 * std::pow(t, -0.75); }

}  // namespace

TEST_CASE("double-double error-free transforms are exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng) * 1e-7;
    const DoubleDouble s = two_sum(a, b);
    CHECK(s.hi == a + b);
    // s.hi + s.lo == a + b: check via a second TwoSum on the residual.
    CHECK(two_sum(s.hi - a, -b).hi == -s.lo);
    const DoubleDouble p = two_prod(a, b);
    CHECK(p.hi == a * b);
    CHECK(std::fma(a, b, -p.hi) == p.lo);
  }
}

TEST_CASE("phase reduction lands in [-pi, pi]") {
  for (const double x : {0.0, 1.0, 1e3, 6.5e7, 1.23456789e9, -4e6}) {
    const DoubleDouble r = dd::reduce_two_pi(DoubleDouble(x));
    CHECK(std::fabs(r.hi) <= M_PI + 1e-15);
    CHECK(std::cos(r.hi) == doctest::Approx(std::cos(x)).epsilon(1e-9));
  }
}

TEST_CASE("theta matches the reference") {
  CHECK(std::fabs(theta(10000.0).value - 31861.9238308358208729503350142) <= 1e-9);
  CHECK(std::fabs(theta(10000.0).deriv - 3.686231652575085292557737) <= 1e-12);
  CHECK(std::fabs(theta(60.0).value - 37.3016730205329345924707215082) <= 1e-9);
  CHECK(std::fabs(theta(1e6).value - 5488816.35307840344488282315437) <= 1e-9);
  CHECK(std::fabs(theta(1e6).deriv - 5.988816745777443476940311) <= 1e-12);
}

TEST_CASE("theta: asymptotic series agrees with the oracle log-gamma") {
  for (const double t : {50.0, 73.25, 1000.0, 10000.0, 123456.789, 1e7}) {
    const DoubleDouble diff = theta_asymptotic(t).phase - theta_oracle(t).phase;
    CHECK(std::fabs(diff.to_double()) <= 1e-9);
  }
}

TEST_CASE("theta: increasing, with derivative matching a centred difference") {
  CHECK(theta(1001.0).value > theta(1000.0).value);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logt(std::log(20.0), std::log(1e7));
  for (int i = 0; i < 200; ++i) {
    const double t = std::exp(logt(rng));
    const ThetaValue th = theta(t);
    CHECK(th.deriv > 0.0);
    const double h = 1e-3 * std::max(1.0, std::sqrt(t));
    const double fd = (theta(t + h).phase - theta(t - h).phase).to_double() / (2 * h);
    CHECK(std::fabs(fd / th.deriv - 1.0) <= 1e-8);
  }
}

TEST_CASE("theta: domain") {
  CHECK_THROWS_AS(theta(5.0), DomainError);
  CHECK_THROWS_AS(theta_asymptotic(49.0), DomainError);
  CHECK_NOTHROW(theta(20.0));
}

TEST_CASE("rs_z matches the reference within 10 t^-3/4") {
  for (const auto& r : kZRef) {
    for (const int order : {1, 2}) {
      EvalConfig cfg;
      cfg.remainder_order = order;
      const ZValue z = rs_z(r.t, cfg);
      CHECK(std::fabs(z.value - r.z) <= rs_tolerance(r.t));
      CHECK(std::fabs(z.value - r.z) <= z.err_bound + 1e-13);
    }
  }
}

TEST_CASE("oracle matches the reference to its digits") {
  for (const auto& r : kZRef) {
    const ZValue z = z_oracle(r.t, 15);
    CHECK(std::fabs(z.value - r.z) <= 1e-13);
    CHECK(z.err_bound <= 1e-13);
  }
  CHECK(std::fabs(z_oracle(100.0, 20).imag_residual) <= 1e-15);
  CHECK_THROWS_AS(z_oracle(100.0, 40), PrecisionUnreachable);
  CHECK_THROWS_AS(z_oracle(1.0, 15), DomainError);
}

TEST_CASE("rs_z: structure of the result") {
  for (const double t : {50.0, 1e3, 12345.6, 1e6, 9.99e6}) {
    const ZValue z = rs_z(t);
    CHECK(z.n_terms == static_cast<long>(std::floor(std::sqrt(t / (2 * M_PI)))));
    for (const int order : {0, 1, 2}) {
      EvalConfig cfg;
      cfg.remainder_order = order;
      const ZValue zo = rs_z(t, cfg);
      CHECK(zo.err_bound >= 0.0);
      // First omitted correction is of size t^{-(2K+1)/4}.
      CHECK(zo.err_bound <= rs_remainder_constant(order) * std::pow(t, -(2.0 * order + 1.0) / 4.0) + 1e-12);
      if (order > 0) CHECK(zo.err_bound < rs_z(t, EvalConfig{.remainder_order = order - 1}).err_bound);
    }
  }
  CHECK_THROWS_AS(rs_z(49.0), DomainError);
}

TEST_CASE("rs_z agrees with the oracle within the combined bounds") {
  std::mt19937_64 rng(3);
  for (const auto [lo, hi] : {std::pair{60.0, 200.0}, std::pair{1e3, 2e3}, std::pair{1e5, 1e5 + 100}}) {
    std::uniform_real_distribution<double> u(lo, hi);
    for (int i = 0; i < 20; ++i) {
      const double t = u(rng);
      const ZValue z = rs_z(t);
      const ZValue o = z_oracle(t, 15);
      CHECK(std::fabs(z.value - o.value) <= z.err_bound + o.err_bound);
    }
  }
}

TEST_CASE("double-double abscissa equals the rounded one when lo is zero") {
  for (const double t : {1234.5, 1e6 + 0.25}) {
    CHECK(rs_z(DoubleDouble(t)).value == rs_z(t).value);
  }
  // A sub-ulp offset moves Z by Z' * offset.
  const double t = 1e6 + 0.3;
  const double off = 3e-11;
  const double slope = (rs_z(t + 1e-6).value - rs_z(t - 1e-6).value) / 2e-6;
  const double moved = rs_z(DoubleDouble(t, off)).value - rs_z(t).value;
  CHECK(std::fabs(moved - slope * off) <= 1e-14);
}

TEST_CASE("oracle finds exactly one zero between 17 and 24") {
  int changes = 0;
  double where = 0.0;
  double prev = z_oracle(17.0, 20).value;
  for (int i = 1; i <= 700; ++i) {
    const double t = 17.0 + 0.01 * i;
    const double z = z_oracle(t, 20).value;
    if ((z > 0) != (prev > 0)) {
      ++changes;
      where = t;
    }
    prev = z;
  }
  CHECK(changes == 1);
  CHECK(where - 0.01 < 21.02203963877155499262848);
  CHECK(where > 21.02203963877155499262848);
}

TEST_CASE("batch evaluation is independent of the thread count") {
  std::vector<double> ts;
  for (int i = 0; i < 257; ++i) ts.push_back(1e5 + 0.37 * i);
  const auto one = rs_z_batch(ts, {}, 1);
  const auto many = rs_z_batch(ts, {}, 4);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(one[i].value == many[i].value);
}

TEST_CASE("evaluation counter counts kernel calls") {
  const auto before = z_evaluation_count();
  for (int i = 0; i < 10; ++i) rs_z(1000.0 + i);
  CHECK(z_evaluation_count() - before >= 10);
}
