#include "zlaw/nupoints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zlaw/errors.hpp"
#include "zlaw/special.hpp"

namespace zlaw {
namespace {

constexpr int kMaxIterations = 100;

// Inverse of the leading term theta ~ (t/2) ln(t / 2pi e) - pi/8, refined twice
// by fixed-point iteration. Only meaningful well inside the asymptotic range.
double initial_guess(double target) {
  const double v = target + M_PI / 8.0;
  const double two_pi_e = 2.0 * M_PI * M_E;
  if (v < 200.0) return 20.0;
  double t = 2.0 * v / std::log(v / (M_PI * M_E));
  for (int i = 0; i < 2; ++i) t = 2.0 * v / std::log(t / two_pi_e);
  return t;
}

double residual(const ThetaValue& th, const DoubleDouble& target) {
  return (th.phase - target).to_double();
}

}  // namespace

void validate(const WindowSpec& w) {
  if (!(w.T >= 1000.0)) throw DomainError("window: T must be >= 1000");
  if (!(w.H > 0.0) || !(w.H <= w.T)) throw DomainError("window: H must satisfy 0 < H <= T");
}

DoubleDouble nu_target(long nu, double tau) { return dd::kPi * static_cast<double>(nu) + DoubleDouble(tau); }

NuPoint solve_nu_point(long nu, double tau) { return solve_nu_point(nu, tau, 0.0); }

NuPoint solve_nu_point(long nu, double tau, double hint) {
  if (nu < 1) throw DomainError("solve_nu_point: nu must be >= 1");
  if (!(std::fabs(tau) <= M_PI)) throw DomainError("solve_nu_point: tau outside [-pi, pi]");
  const DoubleDouble target = nu_target(nu, tau);

  double lo = kThetaMin;
  double hi = std::numeric_limits<double>::infinity();
  static const ThetaValue floor_theta = theta(kThetaMin);
  if (residual(floor_theta, target) > 0.0) {
    throw DomainError("solve_nu_point: target below the monotone range of theta");
  }
  double t = hint >= kThetaMin ? hint : initial_guess(target.hi);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const ThetaValue th = theta(t);
    const double r = residual(th, target);
    if (r == 0.0) return {nu, tau, t};
    if (r < 0.0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
    double next = t - r / th.deriv;
    const bool converged = std::fabs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * t;
    if (!converged && !(next > lo && next < hi)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * std::max(t, lo);
    }
    t = next;
    if (converged) {
      // Walk to the representable abscissa with the smallest residual, so the
      // result does not depend on the starting point. theta is increasing, so
      // the sign of the residual gives the direction.
      double best = t;
      double best_r = residual(theta(t), target);
      const double toward = best_r > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      best_r = std::fabs(best_r);
      for (int walk = 0; walk < 64; ++walk) {
        const double cand = std::nextafter(best, toward);
        const double cr = std::fabs(residual(theta(cand), target));
        if (!(cr < best_r)) break;
        best = cand;
        best_r = cr;
      }
      if (best_r > 1e-10 * std::max(1.0, std::fabs(target.hi))) break;
      return {nu, tau, best};
    }
  }
  throw NoConvergence("solve_nu_point: no convergence for nu = " + std::to_string(nu) +
                          ", tau = " + std::to_string(tau),
                      lo, hi);
}

std::pair<long, long> nu_range(double lo, double hi, double tau) {
  const double a = theta(std::max(lo, kThetaMin)).value;
  const double b = theta(std::max(hi, kThetaMin)).value;
  const long first = std::max(1L, static_cast<long>(std::floor((a - tau) / M_PI)) - 1);
  const long last = std::max(first, static_cast<long>(std::ceil((b - tau) / M_PI)) + 1);
  return {first, last};
}

double expected_count(const WindowSpec& w) { return w.H / (2.0 * M_PI) * std::log(w.T / (2.0 * M_PI)); }

double expected_gap(double T) { return 2.0 * M_PI / std::log(T / (2.0 * M_PI)); }

std::vector<NuPoint> enumerate_window(const WindowSpec& w, double tau) {
  validate(w);
  const auto [first, last] = nu_range(w.T, w.T + w.H, tau);
  const double gap = expected_gap(w.T);
  const long stride = w.parity == Parity::all ? 1 : 2;
  long nu = first;
  if (w.parity == Parity::even && nu % 2 != 0) ++nu;
  if (w.parity == Parity::odd && nu % 2 == 0) ++nu;

  std::vector<NuPoint> out;
  out.reserve(static_cast<std::size_t>(expected_count(w) / static_cast<double>(stride)) + 8);
  double hint = 0.0;
  for (; nu <= last; nu += stride) {
    const NuPoint p = solve_nu_point(nu, tau, hint);
    hint = p.t + static_cast<double>(stride) * gap;
    if (p.t >= w.T - kWindowEdgeTolerance && p.t < w.T + w.H - kWindowEdgeTolerance) out.push_back(p);
  }
  return out;
}

}  // namespace zlaw
