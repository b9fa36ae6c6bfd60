// Shifted Gram points t_nu(tau): solutions of theta(t) = pi*nu + tau.
#pragma once

#include <vector>

#include "zlaw/double_double.hpp"

namespace zlaw {

struct NuPoint {
  long nu = 0;
  double tau = 0.0;
  double t = 0.0;
};

enum class Parity { all, even, odd };

struct WindowSpec {
  double T = 1e6;
  double H = 1e3;
  Parity parity = Parity::all;
};

/// Throws DomainError unless T >= 1000 and 0 < H <= T.
void validate(const WindowSpec& w);

/// Edge tolerance: a point within this distance of T counts as inside, of T+H as outside.
inline constexpr double kWindowEdgeTolerance = 1e-9;

/// pi*nu + tau in double-double.
DoubleDouble nu_target(long nu, double tau);

/// Newton on theta with bisection fallback. Requires nu >= 1 and tau in [-pi, pi];
/// throws NoConvergence with the last bracket on failure.
NuPoint solve_nu_point(long nu, double tau);

/// Same, with a starting abscissa (e.g. the neighbouring solution).
NuPoint solve_nu_point(long nu, double tau, double hint);

/// Smallest and largest nu whose t_nu(tau) can fall in [lo, hi] (a superset by one index).
std::pair<long, long> nu_range(double lo, double hi, double tau);

/// All t_nu(tau) in [T, T+H] with the requested index parity, increasing in t.
std::vector<NuPoint> enumerate_window(const WindowSpec& w, double tau);

/// (H / 2pi) ln(T / 2pi): the expected number of points per window.
double expected_count(const WindowSpec& w);

/// 2pi / ln(T / 2pi): the expected spacing.
double expected_gap(double T);

}  // namespace zlaw
