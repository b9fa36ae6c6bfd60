#include "zlaw/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "zlaw/errors.hpp"

namespace zlaw {
namespace {

// Sampled minima of |Z| below this are probed for a hidden pair of zeros.
// Two zeros closer than two sampling steps leave |Z| ~ Z'' step^2 at the
// middle sample, far below 0.1 on the working range.
constexpr double kDipProbe = 0.1;
// After bisection to ~1e-9, |Z| at the bracket ends must be tiny; anything
// above this means the sign change was not a zero of a continuous Z.
constexpr double kSuspiciousLevel = 1e-3;

struct Sampler {
  const EvalConfig& cfg;
  long n = 0;
  double operator()(double t) {
    ++n;
    return rs_z(t, cfg).value;
  }
};

double refine(Sampler& z, double lo, double flo, double hi, double fhi, double zero_tol) {
  const double tol = std::max(zero_tol, 4.0 * (std::nextafter(hi, 2.0 * hi) - hi));
  for (;;) {
    const double width = hi - lo;
    const double mid = lo + 0.5 * width;
    if (width <= tol || mid <= lo || mid >= hi) break;
    const double fm = z(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (std::min(std::fabs(flo), std::fabs(fhi)) > kSuspiciousLevel) {
    throw SuspiciousZero("sign change of Z near t = " + std::to_string(lo) + " did not refine to a zero", lo, hi);
  }
  return lo + 0.5 * (hi - lo);
}

bool same_sign(double a, double b) { return (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0); }

}  // namespace

void validate_half_width(double x, const char* name) {
  if (!(x > 0.0) || !(x <= M_PI / 2.0)) {
    throw DomainError(std::string(name) + " must lie in (0, pi/2]");
  }
}

DisjointIntervalSet build_family(const WindowSpec& w, double x, Parity parity) {
  validate(w);
  validate_half_width(x);
  const double lo = w.T;
  const double hi = w.T + w.H;
  auto [first, last] = nu_range(lo, hi, 0.0);
  first = std::max(1L, first - 1);
  ++last;
  if (parity == Parity::even && first % 2 != 0) ++first;
  if (parity == Parity::odd && first % 2 == 0) ++first;
  const long stride = parity == Parity::all ? 1 : 2;
  const double gap = expected_gap(w.T);

  std::vector<Interval> out;
  double hint_l = 0.0, hint_r = 0.0;
  for (long nu = first; nu <= last; nu += stride) {
    const double l = solve_nu_point(nu, -x, hint_l).t;
    const double r = solve_nu_point(nu, x, hint_r).t;
    hint_l = l + static_cast<double>(stride) * gap;
    hint_r = r + static_cast<double>(stride) * gap;
    const double a = std::max(l, lo);
    const double b = std::min(r, hi);
    if (a < b) out.push_back({a, b});
  }
  return DisjointIntervalSet(std::move(out));
}

WindowSets build_sets(const WindowSpec& w, double x, double y) {
  validate_half_width(x, "x");
  validate_half_width(y, "y");
  return {build_family(w, x, Parity::even), build_family(w, y, Parity::odd)};
}

double sampling_step(double t, double density) {
  return 2.0 * M_PI / (32.0 * std::log(t / (2.0 * M_PI))) / density;
}

SignPartition sign_partition(const DisjointIntervalSet& s, double zero_tol, const EvalConfig& cfg,
                             double density) {
  if (!(zero_tol > 0.0)) throw DomainError("sign_partition: zero_tol must be positive");
  if (!(density > 0.0)) throw DomainError("sign_partition: density must be positive");
  if (!s.empty() && s.intervals().front().lo < kKernelMin) {
    throw DomainError("sign_partition: set reaches below the kernel range");
  }
  Sampler z{cfg};
  SignPartition out;
  std::vector<Interval> plus, minus;
  std::vector<double> ts, fs, zeros;

  for (const Interval& iv : s.intervals()) {
    const double len = iv.length();
    const long n = std::max(2L, static_cast<long>(std::ceil(len / sampling_step(iv.lo, density))));
    ts.resize(n + 1);
    fs.resize(n + 1);
    for (long i = 0; i <= n; ++i) {
      ts[i] = i == n ? iv.hi : iv.lo + len * (static_cast<double>(i) / static_cast<double>(n));
      fs[i] = z(ts[i]);
    }
    zeros.clear();
    for (long i = 1; i <= n; ++i) {
      if (fs[i] == 0.0 && i < n) zeros.push_back(ts[i]);
      if ((fs[i - 1] < 0.0 && fs[i] > 0.0) || (fs[i - 1] > 0.0 && fs[i] < 0.0)) {
        zeros.push_back(refine(z, ts[i - 1], fs[i - 1], ts[i], fs[i], zero_tol));
      }
    }
    for (long i = 0; i <= n; ++i) {
      const double a = std::fabs(fs[i]);
      if (fs[i] == 0.0 || a >= kDipProbe) continue;
      const long l = std::max(0L, i - 1);
      const long r = std::min(n, i + 1);
      if (!same_sign(fs[l], fs[i]) || !same_sign(fs[r], fs[i])) continue;
      if (std::fabs(fs[l]) < a || std::fabs(fs[r]) < a) continue;
      const double sgn = fs[i] > 0.0 ? 1.0 : -1.0;
      std::uintmax_t iters = 60;
      const auto [tm, gm] = boost::math::tools::brent_find_minima(
          [&](double t) { return sgn * z(t); }, ts[l], ts[r], 40, iters);
      if (gm < 0.0) {
        const double fm = sgn * gm;
        zeros.push_back(refine(z, ts[l], fs[l], tm, fm, zero_tol));
        zeros.push_back(refine(z, tm, fm, ts[r], fs[r], zero_tol));
      } else if (gm < kTangencyLevel) {
        out.near_tangencies.push_back(tm);
      }
      ++i;  // the next sample cannot be another minimum of the same dip
    }
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());

    double lo = iv.lo;
    auto emit = [&](double a, double b) {
      if (!(a < b)) return;
      const double fm = z(a + 0.5 * (b - a));
      (fm < 0.0 ? minus : plus).push_back({a, b});
    };
    for (const double zr : zeros) {
      if (zr <= iv.lo || zr >= iv.hi) continue;
      emit(lo, zr);
      out.zeros.push_back(zr);
      lo = zr;
    }
    emit(lo, iv.hi);
  }
  out.plus = DisjointIntervalSet(std::move(plus));
  out.minus = DisjointIntervalSet(std::move(minus));
  out.n_evals = z.n;
  return out;
}

}  // namespace zlaw
