// Adaptive Gauss-Kronrod (7/15) quadrature over intervals and interval sets.
#pragma once

#include <functional>

#include "zlaw/double_double.hpp"
#include "zlaw/interval_set.hpp"
#include "zlaw/special.hpp"

namespace zlaw {

/// Integrands see the node as an unevaluated double-double sum.
using Integrand = std::function<double(const DoubleDouble&)>;

struct IntegralResult {
  double value = 0.0;
  double err_est = 0.0;
  long n_evals = 0;
};

struct QuadConfig {
  /// A panel is accepted once its error estimate is below
  /// rel_tol * integral of |f| over the panel (or abs_tol * panel length).
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  /// Initial panels per oscillation length 2pi / ln(t/2pi).
  double panels_per_gap = 8.0;
  /// Panels allowed per interval before MaxSubdivision.
  long max_panels = 1L << 20;
  EvalConfig eval;
};

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
struct PanelResult {
  double value = 0.0;
  double err = 0.0;
  double abs_integral = 0.0;  // integral of |f| by the same rule
};
PanelResult gauss_kronrod15(const Integrand& f, double a, double b);

/// Adaptive integral of f over [a, b] starting from initial_panels equal
/// panels. Panels are refined depth first, left to right, and summed in that
/// order, so the result is a pure function of the inputs.
IntegralResult integrate(const Integrand& f, double a, double b, long initial_panels,
                         const QuadConfig& qc = {});

/// integrate() over each interval with the initial panel count tied to the
/// local oscillation length of Z; results combined by compensated summation.
IntegralResult integrate_set(const Integrand& f, const DisjointIntervalSet& s,
                             const QuadConfig& qc = {});

/// Integral of Z = rs_z over the set.
IntegralResult integrate_set(const DisjointIntervalSet& s, const QuadConfig& qc = {});

/// ceil(panels_per_gap * length / gap(a)), at least 1.
long initial_panels(double a, double b, double panels_per_gap);

}  // namespace zlaw
