// Riemann-Siegel theta, Hardy's Z via the Riemann-Siegel formula, and an
// independent Euler-Maclaurin oracle for cross-validation.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "zlaw/double_double.hpp"

namespace zlaw {

/// Lower end of the asymptotic theta series; below it the oracle log-gamma is used.
inline constexpr double kThetaAsymptoticMin = 50.0;
/// Lower end of the monotone range served by theta() (theta' > 0 above ~6.29).
inline constexpr double kThetaMin = 10.0;
/// Lower end of the Riemann-Siegel kernel.
inline constexpr double kKernelMin = 50.0;
/// Upper end of the kernel (main-sum length stays below 2^16).
inline constexpr double kKernelMax = 2.6e10;
/// Lower end of the oracle.
inline constexpr double kOracleMin = 2.0;

struct ThetaValue {
  double t = 0.0;
  double value = 0.0;    // theta(t), rounded
  DoubleDouble phase;    // theta(t) to double-double accuracy
  double deriv = 0.0;    // theta'(t)
};

struct ZValue {
  double t = 0.0;
  double value = 0.0;
  double err_bound = 0.0;
  long n_terms = 0;            // kernel: floor(sqrt(t/2pi)); oracle: Euler-Maclaurin length
  double value_lo = 0.0;       // oracle only: value + value_lo carries extra digits
  double imag_residual = 0.0;  // oracle only: Im(e^{i theta} zeta(1/2+it))
};

struct EvalConfig {
  /// Riemann-Siegel correction terms beyond the main sum: 0, 1 (C0) or 2 (C0, C1).
  int remainder_order = 2;
  /// Working precision of the oracle path, decimal digits.
  int oracle_digits = 15;
};

/// theta(t) from the Stirling expansion for t >= 50, the oracle log-gamma on
/// [kThetaMin, 50). Throws DomainError below kThetaMin.
ThetaValue theta(double t);

/// The asymptotic series alone; throws DomainError for t < 50.
ThetaValue theta_asymptotic(double t);

/// theta from arbitrary-precision Im ln Gamma(1/4 + it/2); t >= kOracleMin.
ThetaValue theta_oracle(double t, int digits = 30);

/// Riemann-Siegel coefficients C0(p), C1(p), C2(p), p = frac(sqrt(t/2pi)).
std::array<double, 3> rs_coefficients(double p);

/// Constant C with err_bound <= C * t^{-(2K+1)/4} + rounding, K = remainder_order.
double rs_remainder_constant(int remainder_order);

ZValue rs_z(double t, const EvalConfig& cfg = {});

/// Same at the abscissa t.hi + t.lo, so quadrature nodes need not be rounded.
ZValue rs_z(DoubleDouble t, const EvalConfig& cfg = {});

/// Evaluates rs_z at each abscissa; parallel over t when threads > 1, results
/// are independent of the thread count.
std::vector<ZValue> rs_z_batch(std::span<const double> ts, const EvalConfig& cfg = {},
                               unsigned threads = 1);

ZValue z_oracle(double t, int digits);

/// Number of rs_z evaluations since start (or the last reset), all threads.
std::uint64_t z_evaluation_count();
void reset_z_evaluation_count();

}  // namespace zlaw
