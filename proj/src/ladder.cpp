#include "zlaw/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zlaw/errors.hpp"

namespace zlaw {
namespace {

constexpr int kN = kLadderDegree;
constexpr int kMaxSplitDepth = 24;

struct ChebNodes {
  std::array<double, kN + 1> x;
  std::array<std::array<double, kN + 1>, kN + 1> cos_jk;
  ChebNodes() {
    for (int j = 0; j <= kN; ++j) {
      x[j] = std::cos(M_PI * j / kN);
      for (int k = 0; k <= kN; ++k) cos_jk[j][k] = std::cos(M_PI * ((j * k) % (2 * kN)) / kN);
    }
  }
};

const ChebNodes& cheb_nodes() {
  static const ChebNodes nodes;
  return nodes;
}

template <std::size_t M>
double clenshaw(const std::array<double, M>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = M - 1; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

struct PanelFit {
  std::array<double, kN + 1> c{};
  std::array<double, kN + 2> anti{};
  double integral = 0.0;  // over the panel, in t
  double tail = 0.0;
  double scale = 0.0;
};

PanelFit fit_panel(double a, double b, const EvalConfig& cfg) {
  const ChebNodes& nodes = cheb_nodes();
  const DoubleDouble centr = two_sum(a, b) * 0.5;
  const DoubleDouble half = two_sum(b, -a) * 0.5;
  std::array<double, kN + 1> f;
  for (int j = 0; j <= kN; ++j) {
    const DoubleDouble t = centr + half * nodes.x[j];
    const double z = rs_z(t, cfg).value;
    f[j] = omega(t.hi) * z * z;
  }
  PanelFit p;
  for (int k = 0; k <= kN; ++k) {
    double s = 0.5 * (f[0] * nodes.cos_jk[0][k] + f[kN] * nodes.cos_jk[kN][k]);
    for (int j = 1; j < kN; ++j) s += f[j] * nodes.cos_jk[j][k];
    p.c[k] = 2.0 * s / kN;
  }
  p.c[0] *= 0.5;
  p.c[kN] *= 0.5;

  // Antiderivative in x, vanishing at x = -1.
  auto c = [&](int k) { return k <= kN ? p.c[k] : 0.0; };
  p.anti[1] = c(0) - 0.5 * c(2);
  for (int k = 2; k <= kN + 1; ++k) p.anti[k] = (c(k - 1) - c(k + 1)) / (2.0 * k);
  double at_minus_one = 0.0;
  for (int k = 1; k <= kN + 1; ++k) at_minus_one += (k % 2 == 0 ? 1.0 : -1.0) * p.anti[k];
  p.anti[0] = -at_minus_one;
  const double h = half.to_double();
  for (double& v : p.anti) v *= h;
  double sum = 0.0;
  for (const double v : p.anti) sum += v;
  p.integral = sum;

  for (const double v : p.c) p.scale = std::max(p.scale, std::fabs(v));
  p.tail = std::fabs(p.c[kN - 1]) + std::fabs(p.c[kN]);
  return p;
}

}  // namespace

double omega(double t) {
  if (!(t >= kKernelMin)) throw DomainError("omega: t = " + std::to_string(t) + " below 50");
  return 1.0 / std::log(t);
}

std::size_t LadderGrid::panel_of(double t) const {
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  const std::size_t k = it == ts_.begin() ? 0 : static_cast<std::size_t>(it - ts_.begin()) - 1;
  return std::min(k, ts_.size() - 2);
}

DoubleDouble LadderGrid::phi(const DoubleDouble& t) const {
  const std::size_t k = panel_of(t.hi);
  const double h = 0.5 * (ts_[k + 1] - ts_[k]);
  const double u = (t - DoubleDouble(ts_[k])).to_double();
  const double x = u / h - 1.0;
  return phis_[k] + DoubleDouble(clenshaw(antiderivative_[k], x));
}

double LadderGrid::phi_prime(const DoubleDouble& t) const {
  const std::size_t k = panel_of(t.hi);
  const double h = 0.5 * (ts_[k + 1] - ts_[k]);
  const double x = (t - DoubleDouble(ts_[k])).to_double() / h - 1.0;
  return clenshaw(integrand_[k], x);
}

LadderGrid build_ladder(double t_lo, double t_hi, double step_control, const EvalConfig& cfg) {
  if (!(t_lo >= kKernelMin) || !(t_hi > t_lo)) {
    throw DomainError("build_ladder: need 50 <= t_lo < t_hi");
  }
  if (t_hi - t_lo > t_lo / std::log(t_lo)) {
    throw DomainError("build_ladder: range exceeds t_lo / ln t_lo");
  }
  if (!(step_control > 0.0)) throw DomainError("build_ladder: step_control must be positive");

  LadderGrid g;
  const double gap = 2.0 * M_PI / std::log(t_lo / (2.0 * M_PI));
  const long n0 = std::max(1L, static_cast<long>(std::ceil((t_hi - t_lo) / (0.5 * gap))));
  struct Pending {
    double a, b;
    int depth;
  };
  std::vector<Pending> stack;
  for (long i = n0; i-- > 0;) {
    const double a = t_lo + (t_hi - t_lo) * (static_cast<double>(i) / static_cast<double>(n0));
    const double b = i + 1 == n0 ? t_hi : t_lo + (t_hi - t_lo) * (static_cast<double>(i + 1) / static_cast<double>(n0));
    stack.push_back({a, b, 0});
  }

  g.ts_.push_back(t_lo);
  g.phis_.push_back(DoubleDouble(t_lo));
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const PanelFit fit = fit_panel(p.a, p.b, cfg);
    g.n_evals_ += kN + 1;
    const double mid = p.a + 0.5 * (p.b - p.a);
    // Near zeros of Z the local scale collapses; measure the tail against the
    // mean of omega Z^2 there instead, so rounding noise does not force splits.
    const double mean_level = omega(p.a) * std::log(p.a / (2.0 * M_PI));
    const bool converged = fit.tail <= step_control * std::max(fit.scale, mean_level);
    if (!converged && p.depth < kMaxSplitDepth && mid > p.a && mid < p.b) {
      stack.push_back({mid, p.b, p.depth + 1});
      stack.push_back({p.a, mid, p.depth + 1});
      continue;
    }
    g.error_estimate_ += fit.tail * 0.5 * (p.b - p.a);
    g.ts_.push_back(p.b);
    g.phis_.push_back(g.phis_.back() + DoubleDouble(fit.integral));
    g.integrand_.push_back(fit.c);
    g.antiderivative_.push_back(fit.anti);
  }
  g.phis_hi_.reserve(g.phis_.size());
  for (const DoubleDouble& v : g.phis_) g.phis_hi_.push_back(v.to_double());
  return g;
}

namespace {

// Fritsch-Butland slope for monotone cubic interpolation.
double pchip_slope(double d0, double d1) {
  if (d0 * d1 <= 0.0) return 0.0;
  return 3.0 * d0 * d1 / (std::max(d0, d1) + 2.0 * std::min(d0, d1));
}

}  // namespace

double reverse_point(double y, const LadderGrid& g) {
  const auto ts = g.ts();
  const auto ph = g.phis();
  if (!(y >= ph.front()) || !(y <= ph.back())) {
    throw CoverageError("reverse_point: y = " + std::to_string(y) + " outside the ladder range [" +
                        std::to_string(ph.front()) + ", " + std::to_string(ph.back()) + "]");
  }
  std::size_t k = static_cast<std::size_t>(std::upper_bound(ph.begin(), ph.end(), y) - ph.begin());
  k = std::clamp<std::size_t>(k, 1, ph.size() - 1) - 1;
  const double t0 = ts[k], t1 = ts[k + 1];
  const double y0 = ph[k], y1 = ph[k + 1];

  // Initial guess from the monotone cubic through the inverse map.
  double t = t0;
  const double dy = y1 - y0;
  if (dy > 0.0) {
    const double d = (t1 - t0) / dy;
    const double dl = k > 0 && ph[k] > ph[k - 1] ? (ts[k] - ts[k - 1]) / (ph[k] - ph[k - 1]) : d;
    const double dr = k + 2 < ph.size() && ph[k + 2] > ph[k + 1] ? (ts[k + 2] - ts[k + 1]) / (ph[k + 2] - ph[k + 1]) : d;
    const double m0 = pchip_slope(dl, d);
    const double m1 = pchip_slope(d, dr);
    const double s = (y - y0) / dy;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    t = h00 * t0 + h10 * dy * m0 + h01 * t1 + h11 * dy * m1;
  }

  // Safeguarded Newton on the panel interpolant.
  const DoubleDouble target(y);
  auto resid = [&](double tt) { return (g.phi(DoubleDouble(tt)) - target).to_double(); };
  double lo = t0, hi = t1;
  t = std::clamp(t, lo, hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double r = resid(t);
    if (r == 0.0) break;
    if (r < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = g.phi_prime(DoubleDouble(t));
    double next = slope > 0.0 ? t - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
    if (next == t || hi - lo <= 2.0 * (std::nextafter(hi, 2.0 * hi) - hi)) {
      t = next;
      break;
    }
    t = next;
  }
  // The representable t with the smallest residual.
  double best = t, best_r = std::fabs(resid(t));
  for (int walk = 0; walk < 8; ++walk) {
    bool moved = false;
    for (const double cand : {std::nextafter(best, 0.0), std::nextafter(best, 2.0 * best)}) {
      if (cand < ts.front() || cand > ts.back()) continue;
      const double cr = std::fabs(resid(cand));
      if (cr < best_r) {
        best = cand;
        best_r = cr;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return best;
}

}  // namespace zlaw
