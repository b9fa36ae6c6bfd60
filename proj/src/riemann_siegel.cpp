#include <quadmath.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "log_table.hpp"
#include "zlaw/errors.hpp"
#include "zlaw/special.hpp"

namespace zlaw {
namespace {

std::atomic<std::uint64_t> g_z_evaluations{0};

// Chebyshev series in z = 2p - 1 of Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p)
// and the derivatives the correction terms need. Psi is entire (every zero of
// the denominator is a zero of the numerator), so a modest degree suffices.
class PsiSeries {
 public:
  static constexpr int kDegree = 48;

  PsiSeries() {
    std::vector<__float128> c(kDegree, 0);
    const __float128 pi = M_PIq;
    for (int k = 0; k < kDegree; ++k) {
      __float128 acc = 0;
      for (int j = 0; j < kDegree; ++j) {
        const __float128 angle = pi * (j + 0.5Q) / kDegree;
        const __float128 p = (cosq(angle) + 1) / 2;
        const __float128 f = cosq(2 * pi * (p * p - p - 1.0Q / 16)) / cosq(2 * pi * p);
        acc += f * cosq(k * angle);
      }
      c[k] = 2 * acc / kDegree;
    }
    psi_ = to_double(c, 0);
    const auto d2 = derivative(derivative(c));
    const auto d3 = derivative(d2);
    const auto d6 = derivative(derivative(derivative(d3)));
    psi2_ = to_double(d2, 2);
    psi3_ = to_double(d3, 3);
    psi6_ = to_double(d6, 6);
  }

  std::array<double, 3> coefficients(double p) const {
    const double z = 2.0 * p - 1.0;
    const double pi2 = M_PI * M_PI;
    const double c0 = clenshaw(psi_, z);
    const double c1 = -clenshaw(psi3_, z) / (96.0 * pi2);
    const double c2 = clenshaw(psi2_, z) / (64.0 * pi2) + clenshaw(psi6_, z) / (18432.0 * pi2 * pi2);
    return {c0, c1, c2};
  }

 private:
  using Series = std::vector<__float128>;

  static Series derivative(const Series& c) {
    const int n = static_cast<int>(c.size());
    Series d(n, 0);
    for (int k = n - 1; k >= 1; --k) {
      d[k - 1] = (k + 1 < n ? d[k + 1] : 0) + 2 * k * c[k];
    }
    return d;
  }

  // d/dp = 2 d/dz.
  static std::vector<double> to_double(const Series& c, int order) {
    const __float128 scale = scalbnq(1.0Q, order);
    std::vector<double> out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) out[k] = static_cast<double>(c[k] * scale);
    return out;
  }

  // Sum' c_k T_k(z) with the k = 0 term halved.
  static double clenshaw(const std::vector<double>& c, double z) {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
      const double b0 = 2.0 * z * b1 - b2 + c[k];
      b2 = b1;
      b1 = b0;
    }
    return z * b1 - b2 + 0.5 * c[0];
  }

  std::vector<double> psi_, psi2_, psi3_, psi6_;
};

const PsiSeries& psi_series() {
  static const PsiSeries series;
  return series;
}

const std::vector<double>& inverse_sqrt_table() {
  static const std::vector<double> table = [] {
    std::vector<double> v(std::size_t{1} << 16, 0.0);
    for (std::size_t n = 1; n < v.size(); ++n) v[n] = 1.0 / std::sqrt(static_cast<double>(n));
    return v;
  }();
  return table;
}

// Maximum of |C_k| over p in [0, 1].
double max_coefficient(int k) {
  static const std::array<double, 3> maxima = [] {
    std::array<double, 3> m{0.0, 0.0, 0.0};
    for (int i = 0; i <= 4000; ++i) {
      const auto c = psi_series().coefficients(i / 4000.0);
      for (int j = 0; j < 3; ++j) m[j] = std::max(m[j], std::fabs(c[j]));
    }
    return m;
  }();
  return maxima[static_cast<std::size_t>(k)];
}

}  // namespace

std::array<double, 3> rs_coefficients(double p) { return psi_series().coefficients(p); }

double rs_remainder_constant(int remainder_order) {
  if (remainder_order < 0 || remainder_order > 2) {
    throw DomainError("remainder_order must be 0, 1 or 2");
  }
  // First omitted term is C_K (2pi/t)^{(2K+1)/4}; 1.5 covers the tail of the series.
  return 1.5 * max_coefficient(remainder_order) * std::pow(2.0 * M_PI, (2.0 * remainder_order + 1.0) / 4.0);
}

ZValue rs_z(double t, const EvalConfig& cfg) { return rs_z(DoubleDouble(t), cfg); }

// The abscissa is t + delta with |delta| <= ulp(t); delta enters the phases
// linearly, which is exact to far below double rounding.
ZValue rs_z(DoubleDouble tt, const EvalConfig& cfg) {
  const double t = tt.hi;
  const double delta = tt.lo;
  if (!(t >= kKernelMin) || !(t <= kKernelMax)) {
    throw DomainError("rs_z: t = " + std::to_string(t) + " outside [50, 2.6e10]");
  }
  if (cfg.remainder_order < 0 || cfg.remainder_order > 2) {
    throw DomainError("rs_z: remainder_order must be 0, 1 or 2");
  }
  g_z_evaluations.fetch_add(1, std::memory_order_relaxed);

  // N = floor(sqrt(t/2pi)) decided exactly against t.
  const double a = std::sqrt(t / dd::kTwoPi.hi);
  long n = static_cast<long>(a);
  auto square_times_two_pi = [](long m) {
    return dd::kTwoPi * static_cast<double>(m * m);
  };
  while (n > 0 && (square_times_two_pi(n) - tt).hi > 0.0) --n;
  while ((square_times_two_pi(n + 1) - tt).hi <= 0.0) ++n;
  const double p = std::clamp(a + delta / (2.0 * dd::kTwoPi.hi * a) - static_cast<double>(n), 0.0, 1.0);

  const ThetaValue theta_t = theta_asymptotic(t);
  const DoubleDouble th = dd::reduce_two_pi(theta_t.phase + DoubleDouble(theta_t.deriv * delta));
  const auto& logs = detail::kernel_log_table();
  const auto& inv_sqrt = inverse_sqrt_table();
  CompensatedSum sum;
  for (long k = 1; k <= n; ++k) {
    const DoubleDouble log_k = logs[static_cast<std::size_t>(k)];
    DoubleDouble tl = two_prod(t, log_k.hi);
    tl.lo += t * log_k.lo + delta * log_k.hi;
    const DoubleDouble phase = dd::reduce_two_pi(th - quick_two_sum(tl.hi, tl.lo));
    sum.add(inv_sqrt[static_cast<std::size_t>(k)] * std::cos(phase.hi + phase.lo));
  }
  double value = 2.0 * sum.value();

  const double omega = std::sqrt(dd::kTwoPi.hi / t);
  if (cfg.remainder_order >= 1) {
    const auto c = psi_series().coefficients(p);
    double series = c[0];
    if (cfg.remainder_order >= 2) series += c[1] * omega;
    const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    value += sign * std::sqrt(omega) * series;
  }

  ZValue out;
  out.t = t;
  out.value = value;
  out.n_terms = n;
  const double truncation = rs_remainder_constant(cfg.remainder_order) *
                            std::pow(t, -(2.0 * cfg.remainder_order + 1.0) / 4.0);
  const double rounding = 1e-15 * std::sqrt(static_cast<double>(n)) + 2.2e-16 * std::fabs(value);
  out.err_bound = truncation + rounding;
  return out;
}

std::vector<ZValue> rs_z_batch(std::span<const double> ts, const EvalConfig& cfg, unsigned threads) {
  std::vector<ZValue> out(ts.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ts.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = rs_z(ts[i], cfg);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (ts.size() + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(ts.size(), lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) out[i] = rs_z(ts[i], cfg);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::uint64_t z_evaluation_count() { return g_z_evaluations.load(std::memory_order_relaxed); }

void reset_z_evaluation_count() { g_z_evaluations.store(0, std::memory_order_relaxed); }

}  // namespace zlaw
