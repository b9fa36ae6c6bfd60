// The disconnected sets G1(x), G2(y) and their partition by the sign of Z.
#pragma once

#include <vector>

#include "zlaw/interval_set.hpp"
#include "zlaw/nupoints.hpp"
#include "zlaw/special.hpp"

namespace zlaw {

struct WindowSets {
  DisjointIntervalSet g1;  // around even-indexed points
  DisjointIntervalSet g2;  // around odd-indexed points
};

/// Throws DomainError unless 0 < x <= pi/2.
void validate_half_width(double x, const char* name = "x");

/// Phase windows (t_nu(-x), t_nu(x)) around even nu (G1) and around odd nu
/// with half-width y (G2), clipped to [T, T+H]. A window is kept when it
/// overlaps [T, T+H] at all, so G1(pi/2) and G2(pi/2) tile the window exactly.
WindowSets build_sets(const WindowSpec& w, double x, double y);
inline WindowSets build_sets(const WindowSpec& w, double x) { return build_sets(w, x, x); }

/// Only the even (parity even) or odd family.
DisjointIntervalSet build_family(const WindowSpec& w, double x, Parity parity);

struct SignPartition {
  DisjointIntervalSet plus;
  DisjointIntervalSet minus;
  std::vector<double> zeros;
  /// Local minima of |Z| below kTangencyLevel with no sign change found.
  std::vector<double> near_tangencies;
  long n_evals = 0;
};

inline constexpr double kDefaultZeroTol = 1e-9;
inline constexpr double kTangencyLevel = 1e-6;

/// Sampling step used by sign_partition at abscissa t: 2pi / (32 ln(t/2pi)) / density.
double sampling_step(double t, double density = 1.0);

/// Splits every interval of s at the zeros of Z. Sign changes between samples
/// are bisected to width max(zero_tol, 4 ulp); sampled local minima of |Z|
/// are probed for hidden pairs of zeros. Throws SuspiciousZero when a
/// bracketed sign change does not close onto a small |Z|.
SignPartition sign_partition(const DisjointIntervalSet& s, double zero_tol = kDefaultZeroTol,
                             const EvalConfig& cfg = {}, double density = 1.0);

}  // namespace zlaw
