#include "zlaw/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "zlaw/double_double.hpp"
#include "zlaw/errors.hpp"

namespace zlaw {
namespace {

// QUADPACK qk15 abscissae and weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace

PanelResult gauss_kronrod15(const Integrand& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  // Nodes are formed exactly in double-double so adjacent panels tile [a, b]
  // without rounding gaps.
  const DoubleDouble centr = two_sum(a, b) * 0.5;
  const DoubleDouble half = two_sum(b, -a) * 0.5;
  const double hlgth = half.to_double();
  const double dhlgth = std::fabs(hlgth);

  double fv1[7], fv2[7];
  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const DoubleDouble absc = half * kXgk[jtw];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::fabs(f1) + std::fabs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const DoubleDouble absc = half * kXgk[jtwm1];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  PanelResult out;
  out.value = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > uflow / (50.0 * eps)) abserr = std::max(eps * 50.0 * resabs, abserr);
  out.err = abserr;
  out.abs_integral = resabs;
  return out;
}

IntegralResult integrate(const Integrand& f, double a, double b, long initial_panels,
                         const QuadConfig& qc) {
  IntegralResult out;
  if (!(a < b)) return out;
  initial_panels = std::max(1L, initial_panels);

  struct Panel {
    double a, b;
  };
  std::vector<Panel> stack;
  stack.reserve(static_cast<std::size_t>(initial_panels) + 64);
  const double len = b - a;
  for (long i = initial_panels; i-- > 0;) {
    const double lo = a + len * (static_cast<double>(i) / static_cast<double>(initial_panels));
    const double hi = i + 1 == initial_panels ? b : a + len * (static_cast<double>(i + 1) / static_cast<double>(initial_panels));
    stack.push_back({lo, hi});
  }

  CompensatedSum value;
  CompensatedSum err;
  long panels = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    if (++panels > qc.max_panels) {
      throw MaxSubdivision("integrate: subdivision limit reached on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "]",
                           a, b);
    }
    const PanelResult r = gauss_kronrod15(f, p.a, p.b);
    out.n_evals += 15;
    const double mid = p.a + 0.5 * (p.b - p.a);
    const bool ok = r.err <= std::max(qc.rel_tol * r.abs_integral, qc.abs_tol * (p.b - p.a));
    if (ok || !(mid > p.a && mid < p.b)) {
      if (!ok) {
        throw MaxSubdivision("integrate: panel [" + std::to_string(p.a) + ", " + std::to_string(p.b) +
                                 "] cannot be split further",
                             p.a, p.b);
      }
      value.add(r.value);
      err.add(r.err);
      continue;
    }
    stack.push_back({mid, p.b});
    stack.push_back({p.a, mid});
  }
  out.value = value.value();
  out.err_est = err.value();
  return out;
}

long initial_panels(double a, double b, double panels_per_gap) {
  const double gap = 2.0 * M_PI / std::log(std::max(a, kKernelMin) / (2.0 * M_PI));
  return std::max(1L, static_cast<long>(std::ceil(panels_per_gap * (b - a) / gap)));
}

IntegralResult integrate_set(const Integrand& f, const DisjointIntervalSet& s,
                             const QuadConfig& qc) {
  CompensatedSum value;
  CompensatedSum err;
  IntegralResult out;
  for (const Interval& iv : s.intervals()) {
    const IntegralResult r = integrate(f, iv.lo, iv.hi, initial_panels(iv.lo, iv.hi, qc.panels_per_gap), qc);
    value.add(r.value);
    err.add(r.err_est);
    out.n_evals += r.n_evals;
  }
  out.value = value.value();
  out.err_est = err.value();
  return out;
}

IntegralResult integrate_set(const DisjointIntervalSet& s, const QuadConfig& qc) {
  if (!s.empty() && s.intervals().front().lo < kKernelMin) {
    throw DomainError("integrate_set: set reaches below the kernel range");
  }
  const EvalConfig cfg = qc.eval;
  return integrate_set([&cfg](const DoubleDouble& t) { return rs_z(t, cfg).value; }, s, qc);
}

}  // namespace zlaw
