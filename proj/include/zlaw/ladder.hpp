// A numerical Jacob's ladder: phi(t) = t_lo + integral from t_lo to t of omega Z^2.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "zlaw/double_double.hpp"
#include "zlaw/special.hpp"

namespace zlaw {

enum class OmegaMode { inverse_log };

/// 1 / ln t. Throws DomainError below kKernelMin.
double omega(double t);

inline constexpr int kLadderDegree = 16;

class LadderGrid {
 public:
  /// Panel boundaries and phi at them.
  std::span<const double> ts() const { return ts_; }
  std::span<const double> phis() const { return phis_hi_; }
  OmegaMode omega_mode() const { return OmegaMode::inverse_log; }

  double t_lo() const { return ts_.front(); }
  double t_hi() const { return ts_.back(); }
  double phi_lo() const { return phis_hi_.front(); }
  double phi_hi() const { return phis_hi_.back(); }

  /// phi and phi' from the panel interpolants; t must lie in [t_lo, t_hi].
  DoubleDouble phi(const DoubleDouble& t) const;
  double phi_prime(const DoubleDouble& t) const;

  /// Largest trailing Chebyshev coefficient summed over panels: an estimate of
  /// the accumulated error in phi.
  double error_estimate() const { return error_estimate_; }
  long n_evals() const { return n_evals_; }

 private:
  friend LadderGrid build_ladder(double, double, double, const EvalConfig&);
  std::size_t panel_of(double t) const;

  std::vector<double> ts_;
  std::vector<double> phis_hi_;
  std::vector<DoubleDouble> phis_;
  // Chebyshev coefficients of omega Z^2 on each panel, mapped to [-1, 1].
  std::vector<std::array<double, kLadderDegree + 1>> integrand_;
  // Coefficients of the antiderivative, zero at the left end of the panel.
  std::vector<std::array<double, kLadderDegree + 2>> antiderivative_;
  double error_estimate_ = 0.0;
  long n_evals_ = 0;
};

/// Cumulative Chebyshev quadrature of omega Z^2 on panels of half an
/// oscillation length, split until the trailing coefficients fall below
/// step_control times the panel's largest one. Anchored at phi(t_lo) = t_lo.
/// Requires 50 <= t_lo < t_hi and t_hi - t_lo <= t_lo / ln t_lo.
LadderGrid build_ladder(double t_lo, double t_hi, double step_control = 1e-13, const EvalConfig& cfg = {});

/// The t with phi(t) = y: monotone cubic interpolation of the inverse on the
/// grid, polished by safeguarded Newton on the panel interpolant. Throws
/// CoverageError when y is outside [phi_lo, phi_hi].
double reverse_point(double y, const LadderGrid& g);

}  // namespace zlaw
