#include "zlaw/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "zlaw/double_double.hpp"
#include "zlaw/errors.hpp"

namespace zlaw {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr Band kNoBand{1.0, 0.0};

VerificationReport row(const Workspace& ws, const std::string& scenario, const std::string& param_name,
                       std::vector<double> params) {
  VerificationReport r;
  r.scenario = scenario;
  r.T = ws.window().T;
  r.H = ws.window().H;
  r.param_name = param_name;
  r.params = std::move(params);
  r.safety = ws.config().safety;
  r.band = kNoBand;
  r.error_budget = kNaN;
  return r;
}

double log_scale(const WindowSpec& w) { return std::log(w.T / (2.0 * M_PI)); }

DisjointIntervalSet interval_set(const Interval& iv) { return DisjointIntervalSet({iv}); }

struct Sums {
  double plain = 0.0, alternating = 0.0, even = 0.0, odd = 0.0;
};

Sums nu_sums(const PointValues& pv) {
  CompensatedSum plain, alt, even, odd;
  for (std::size_t i = 0; i < pv.points.size(); ++i) {
    const double z = pv.z[i];
    plain.add(z);
    if (pv.points[i].nu % 2 == 0) {
      alt.add(z);
      even.add(z);
    } else {
      alt.add(-z);
      odd.add(z);
    }
  }
  return {plain.value(), alt.value(), even.value(), odd.value()};
}

// Sum over the endpoints of |Z(a)| |phi(a_pulled) - a|: the first-order effect of
// pulling endpoints back to the nearest representable abscissa.
double endpoint_term(const DisjointIntervalSet& s, const DisjointIntervalSet& pulled, const LadderGrid& g,
                     const EvalConfig& cfg, long& n_evals) {
  double total = 0.0;
  const auto src = s.intervals();
  const auto dst = pulled.intervals();
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (const auto& [a, pa] : {std::pair{src[i].lo, dst[i].lo}, std::pair{src[i].hi, dst[i].hi}}) {
      const double miss = std::fabs((g.phi(DoubleDouble(pa)) - DoubleDouble(a)).to_double());
      total += std::fabs(rs_z(a, cfg).value) * miss;
      ++n_evals;
    }
  }
  return total;
}

}  // namespace

void settle(VerificationReport& r) {
  r.ratio = r.predicted != 0.0 ? r.observed / r.predicted : kNaN;
  r.pass_band = std::isfinite(r.ratio) && r.band.contains(r.ratio);
  r.pass_budget = std::isfinite(r.error_budget) && std::isfinite(r.observed) &&
                  std::fabs(r.observed - r.predicted) <= r.error_budget * r.safety;
  r.pass = !r.error && (r.pass_band || r.pass_budget);
}

// ---------------------------------------------------------------------------
// Workspace

Workspace::Workspace(const WindowSpec& w, const VerifyConfig& cfg) : w_(w), cfg_(cfg) { validate(w_); }

double Workspace::budget_power() const { return std::pow(w_.T, 1.0 / 6.0 + cfg_.epsilon); }

DisjointIntervalSet Workspace::family(double x, Parity parity) {
  return families_.get({x, static_cast<int>(parity)}, [&] { return build_family(w_, x, parity); });
}

IntegralResult Workspace::integral(const DisjointIntervalSet& s) {
  CompensatedSum value, err;
  IntegralResult out;
  for (const Interval& iv : s.intervals()) {
    const IntegralResult r =
        integrals_.get({iv.lo, iv.hi}, [&] { return integrate_set(interval_set(iv), cfg_.quad); });
    value.add(r.value);
    err.add(r.err_est);
    out.n_evals += r.n_evals;
  }
  out.value = value.value();
  out.err_est = err.value();
  return out;
}

SignPartition Workspace::partition(const DisjointIntervalSet& s) {
  std::vector<Interval> plus, minus;
  SignPartition out;
  for (const Interval& iv : s.intervals()) {
    const SignPartition p = partitions_.get(
        {iv.lo, iv.hi}, [&] { return sign_partition(interval_set(iv), cfg_.zero_tol, cfg_.eval); });
    plus.insert(plus.end(), p.plus.intervals().begin(), p.plus.intervals().end());
    minus.insert(minus.end(), p.minus.intervals().begin(), p.minus.intervals().end());
    out.zeros.insert(out.zeros.end(), p.zeros.begin(), p.zeros.end());
    out.near_tangencies.insert(out.near_tangencies.end(), p.near_tangencies.begin(), p.near_tangencies.end());
    out.n_evals += p.n_evals;
  }
  out.plus = DisjointIntervalSet(std::move(plus));
  out.minus = DisjointIntervalSet(std::move(minus));
  return out;
}

PointValues Workspace::points(double tau) {
  return points_.get(tau, [&] {
    PointValues pv;
    WindowSpec all = w_;
    all.parity = Parity::all;
    pv.points = enumerate_window(all, tau);
    pv.z.reserve(pv.points.size());
    for (const NuPoint& p : pv.points) pv.z.push_back(rs_z(p.t, cfg_.eval).value);
    return pv;
  });
}

void Workspace::adopt_ladder(std::shared_ptr<const LadderGrid> g) { ladder_.put(0, std::move(g)); }

std::shared_ptr<const LadderGrid> Workspace::ladder() {
  return ladder_.get(0, [&] {
    return std::make_shared<const LadderGrid>(
        build_ladder(w_.T, w_.T + cfg_.ladder_extent * w_.H, cfg_.ladder_step, cfg_.eval));
  });
}

// ---------------------------------------------------------------------------
// Cell runner

std::vector<VerificationReport> run_cells(const std::vector<Cell>& cells, const WindowSpec& w, unsigned threads,
                                          bool record_time) {
  std::vector<std::vector<VerificationReport>> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = cell.run();
      } catch (const std::exception& e) {
        VerificationReport r;
        r.scenario = cell.scenario;
        r.T = w.T;
        r.H = w.H;
        r.param_name = cell.param_name;
        r.params = cell.params;
        r.observed = r.predicted = r.ratio = r.error_budget = kNaN;
        r.band = kNoBand;
        r.error = true;
        r.message = e.what();
        r.pass = false;
        results[i] = {r};
      }
      const double secs =
          record_time ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;
      for (auto& r : results[i]) r.seconds = secs;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cells.size()))));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<VerificationReport> out;
  for (auto& rs : results) {
    for (auto& r : rs) out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mean value of Z over G1, G2 and their union

std::vector<Cell> mean_value_cells(Workspace& ws, const std::vector<double>& xs, const std::vector<double>& ys) {
  for (const double x : xs) validate_half_width(x, "x");
  for (const double y : ys) validate_half_width(y, "y");
  std::vector<Cell> cells;
  for (const double x : xs) {
    cells.push_back({"t1_g1", "x", {x}, [&ws, x] {
                       const auto& cfg = ws.config();
                       const double H = ws.window().H;
                       const DisjointIntervalSet g1 = ws.family(x, Parity::even);
                       const IntegralResult I = ws.integral(g1);
                       const double m = g1.measure();
                       VerificationReport a = row(ws, "t1_g1", "x", {x});
                       a.observed = I.value;
                       a.predicted = 2.0 / M_PI * H * std::sin(x);
                       a.error_budget = x * ws.budget_power();
                       a.band = cfg.t1;
                       a.n_evals = I.n_evals;
                       settle(a);
                       VerificationReport b = row(ws, "t1_g1_normalized", "x", {x});
                       b.observed = I.value / m;
                       b.predicted = 2.0 * std::sin(x) / x;
                       b.error_budget = x * ws.budget_power() / m;
                       b.band = cfg.t1;
                       b.n_evals = I.n_evals;
                       settle(b);
                       return std::vector{a, b};
                     }});
  }
  for (const double y : ys) {
    cells.push_back({"t1_g2", "y", {y}, [&ws, y] {
                       const auto& cfg = ws.config();
                       const double H = ws.window().H;
                       const DisjointIntervalSet g2 = ws.family(y, Parity::odd);
                       const IntegralResult I = ws.integral(g2);
                       const double m = g2.measure();
                       VerificationReport a = row(ws, "t1_g2", "y", {y});
                       a.observed = I.value;
                       a.predicted = -2.0 / M_PI * H * std::sin(y);
                       a.error_budget = y * ws.budget_power();
                       a.band = cfg.t1;
                       a.n_evals = I.n_evals;
                       settle(a);
                       VerificationReport b = row(ws, "t1_g2_normalized", "y", {y});
                       b.observed = I.value / m;
                       b.predicted = -2.0 * std::sin(y) / y;
                       b.error_budget = y * ws.budget_power() / m;
                       b.band = cfg.t1;
                       b.n_evals = I.n_evals;
                       settle(b);
                       return std::vector{a, b};
                     }});
  }
  for (const double x : xs) {
    for (const double y : ys) {
      cells.push_back({"t1_union", "x;y", {x, y}, [&ws, x, y] {
                         const DisjointIntervalSet u = unite(ws.family(x, Parity::even), ws.family(y, Parity::odd));
                         const IntegralResult I = ws.integral(u);
                         VerificationReport a = row(ws, "t1_union", "x;y", {x, y});
                         a.observed = I.value;
                         a.predicted = 2.0 / M_PI * (std::sin(x) - std::sin(y)) * ws.window().H;
                         a.error_budget = (x + y) * ws.budget_power();
                         a.band = ws.config().t1;
                         a.n_evals = I.n_evals;
                         settle(a);
                         return std::vector{a};
                       }});
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Signum areas

std::vector<Cell> signum_cells(Workspace& ws, const std::vector<double>& xs) {
  for (const double x : xs) validate_half_width(x, "x");
  std::vector<Cell> cells;
  for (const double x : xs) {
    cells.push_back({"t2", "x", {x}, [&ws, x] {
                       const DisjointIntervalSet u = unite(ws.family(x, Parity::even), ws.family(x, Parity::odd));
                       const SignPartition part = ws.partition(u);
                       const IntegralResult ip = ws.integral(part.plus);
                       const IntegralResult im = ws.integral(part.minus);
                       const IntegralResult iu = ws.integral(u);
                       const std::string note = "zeros=" + std::to_string(part.zeros.size()) +
                                                " near_tangencies=" + std::to_string(part.near_tangencies.size());

                       VerificationReport a = row(ws, "t2_signum_ratio", "x", {x});
                       a.observed = ip.value;
                       a.predicted = -im.value;
                       a.error_budget = 2.0 * x * ws.budget_power();
                       a.band = ws.config().t2;
                       a.n_evals = part.n_evals + ip.n_evals + im.n_evals;
                       a.message = note;
                       settle(a);
                       if (!(ip.value > 0.0) || !(im.value < 0.0)) {
                         a.pass = false;
                         a.message += " signum area not positive";
                       }

                       VerificationReport b = row(ws, "t2_decomposition", "x", {x});
                       b.observed = ip.value + im.value;
                       b.predicted = iu.value;
                       b.error_budget = ip.err_est + im.err_est + iu.err_est;
                       b.n_evals = part.n_evals + ip.n_evals + im.n_evals + iu.n_evals;
                       settle(b);
                       return std::vector{a, b};
                     }});
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Lemmas 1 and 2 and the parity split

std::vector<Cell> nu_sum_cells(Workspace& ws, const std::vector<double>& taus) {
  for (const double tau : taus) {
    if (!(std::fabs(tau) <= M_PI)) throw DomainError("tau must lie in [-pi, pi]");
  }
  std::vector<Cell> cells;
  for (const double tau : taus) {
    cells.push_back({"nu_sums", "tau", {tau}, [&ws, tau] {
                       const auto& cfg = ws.config();
                       const WindowSpec& w = ws.window();
                       const PointValues pv = ws.points(tau);
                       const Sums s = nu_sums(pv);
                       const long n = static_cast<long>(pv.points.size());
                       const bool degenerate = std::fabs(std::cos(tau)) < 1e-12;
                       const double main = degenerate ? 0.0 : w.H * log_scale(w) / M_PI * std::cos(tau);
                       const double p = cfg.sum_constant * ws.budget_power();

                       VerificationReport plain = row(ws, "lemma1_sum", "tau", {tau});
                       plain.observed = s.plain;
                       plain.predicted = 0.0;
                       plain.error_budget = p;
                       plain.n_evals = n;
                       settle(plain);

                       VerificationReport alt = row(ws, "lemma2_alternating", "tau", {tau});
                       alt.observed = s.alternating;
                       alt.predicted = main;
                       alt.error_budget = std::pow(w.T, 1.0 / 6.0) * std::log(w.T);
                       alt.band = cfg.lemma2;
                       alt.n_evals = n;
                       if (degenerate) alt.message = "degenerate: cos(tau) = 0";
                       settle(alt);

                       VerificationReport even = row(ws, "parity_even", "tau", {tau});
                       even.observed = s.even;
                       even.predicted = 0.5 * main;
                       even.error_budget = p;
                       even.band = cfg.parity;
                       even.n_evals = n;
                       settle(even);

                       VerificationReport odd = row(ws, "parity_odd", "tau", {tau});
                       odd.observed = s.odd;
                       odd.predicted = -0.5 * main;
                       odd.error_budget = p;
                       odd.band = cfg.parity;
                       odd.n_evals = n;
                       settle(odd);
                       return std::vector{plain, alt, even, odd};
                     }});
  }
  return cells;
}

// ln P0 times the integral over G1(x) against the tau-integral of the even sum
// over (-x, x).
std::vector<Cell> consistency_cells(Workspace& ws, const std::vector<double>& xs) {
  for (const double x : xs) validate_half_width(x, "x");
  std::vector<Cell> cells;
  for (const double x : xs) {
    cells.push_back({"tau_consistency", "x", {x}, [&ws, x] {
                       using Rule = boost::math::quadrature::gauss<double, 8>;
                       const int panels = std::max(1, ws.config().tau_panels);
                       const double width = 2.0 * x / panels;
                       CompensatedSum acc;
                       long n_evals = 0;
                       for (int k = 0; k < panels; ++k) {
                         const double centre = -x + (k + 0.5) * width;
                         const auto& nodes = Rule::abscissa();
                         const auto& weights = Rule::weights();
                         for (std::size_t j = 0; j < nodes.size(); ++j) {
                           for (const double sgn : {-1.0, 1.0}) {
                             if (nodes[j] == 0.0 && sgn > 0.0) continue;
                             const double tau = centre + sgn * 0.5 * width * nodes[j];
                             const PointValues pv = ws.points(tau);
                             n_evals += static_cast<long>(pv.points.size());
                             acc.add(0.5 * width * weights[j] * nu_sums(pv).even);
                           }
                         }
                       }
                       const IntegralResult I = ws.integral(ws.family(x, Parity::even));
                       const double log_p0 = 0.5 * log_scale(ws.window());
                       VerificationReport r = row(ws, "tau_consistency", "x", {x});
                       r.observed = acc.value();
                       r.predicted = log_p0 * I.value;
                       r.band = ws.config().consistency;
                       r.n_evals = n_evals + I.n_evals;
                       settle(r);
                       return std::vector{r};
                     }});
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Hardy-Littlewood

std::vector<Cell> hardy_littlewood_cells(Workspace& ws) {
  std::vector<Cell> cells;
  cells.push_back({"hl", "", {}, [&ws] {
                     const WindowSpec& w = ws.window();
                     const auto& cfg = ws.config();
                     const IntegralResult full = ws.integral(DisjointIntervalSet({{w.T, w.T + w.H}}));
                     const IntegralResult tiled =
                         ws.integral(unite(ws.family(M_PI / 2, Parity::even), ws.family(M_PI / 2, Parity::odd)));

                     VerificationReport a = row(ws, "hl_ratio", "", {});
                     a.observed = full.value / w.H;
                     a.predicted = 0.0;
                     a.error_budget = cfg.hl_fraction;
                     a.n_evals = full.n_evals;
                     settle(a);

                     VerificationReport b = row(ws, "hl_tiling", "", {});
                     b.observed = full.value;
                     b.predicted = tiled.value;
                     b.band = {1.0 - cfg.tiling_rel, 1.0 + cfg.tiling_rel};
                     b.error_budget = cfg.tiling_rel * std::fabs(tiled.value);
                     b.n_evals = full.n_evals + tiled.n_evals;
                     settle(b);
                     return std::vector{a, b};
                   }});
  return cells;
}

// ---------------------------------------------------------------------------
// Ladder and third-order formulae

DisjointIntervalSet pull_back(const DisjointIntervalSet& s, const LadderGrid& g) {
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const Interval& iv : s.intervals()) {
    const double a = reverse_point(iv.lo, g);
    const double b = reverse_point(iv.hi, g);
    if (a < b) out.push_back({a, b});
  }
  return DisjointIntervalSet(std::move(out));
}

IntegralResult integrate_pulled_back(const std::function<double(const DoubleDouble&)>& f,
                                     const DisjointIntervalSet& pulled, const LadderGrid& g, const QuadConfig& qc) {
  const EvalConfig cfg = qc.eval;
  return integrate_set(
      [&](const DoubleDouble& t) {
        const double z = rs_z(t, cfg).value;
        return omega(t.hi) * f(g.phi(t)) * z * z;
      },
      pulled, qc);
}

std::vector<Cell> third_order_cells(Workspace& ws, const std::vector<double>& xs) {
  for (const double x : xs) validate_half_width(x, "x");
  std::vector<Cell> cells;
  cells.push_back({"ladder_slope", "", {}, [&ws] {
                     const auto g = ws.ladder();
                     VerificationReport r = row(ws, "ladder_slope", "", {});
                     r.observed = (g->phi_hi() - g->phi_lo()) / (g->t_hi() - g->t_lo());
                     r.predicted = 1.0;
                     r.band = ws.config().slope;
                     r.n_evals = g->n_evals();
                     settle(r);
                     return std::vector{r};
                   }});
  for (const double x : xs) {
    cells.push_back({"ladder", "x", {x}, [&ws, x] {
                       const auto& cfg = ws.config();
                       const auto g = ws.ladder();
                       const EvalConfig ecfg = cfg.eval;
                       auto z_of = [ecfg](const DoubleDouble& u) { return rs_z(u, ecfg).value; };
                       auto one = [](const DoubleDouble&) { return 1.0; };
                       std::vector<VerificationReport> rows;

                       // G1(x): the indicator identity and the third-order mean value.
                       const DisjointIntervalSet g1 = ws.family(x, Parity::even);
                       const DisjointIntervalSet p1 = pull_back(g1, *g);
                       const IntegralResult ind = integrate_pulled_back(one, p1, *g, cfg.quad);
                       VerificationReport a = row(ws, "ladder_indicator", "x", {x});
                       a.observed = ind.value;
                       a.predicted = g1.measure();
                       a.band = {1.0 - cfg.ladder_rel, 1.0 + cfg.ladder_rel};
                       a.n_evals = ind.n_evals;
                       settle(a);
                       rows.push_back(a);

                       const IntegralResult second = ws.integral(g1);
                       const IntegralResult third = integrate_pulled_back(z_of, p1, *g, cfg.quad);
                       long extra = 0;
                       const double ends = endpoint_term(g1, p1, *g, ecfg, extra);
                       VerificationReport b = row(ws, "ladder_t1_identity", "x", {x});
                       b.observed = third.value;
                       b.predicted = second.value;
                       b.error_budget = third.err_est + second.err_est + ends;
                       b.n_evals = 2 * third.n_evals + second.n_evals + extra;
                       settle(b);
                       rows.push_back(b);

                       const double m = g1.measure();
                       VerificationReport c = row(ws, "ladder_t1_normalized", "x", {x});
                       c.observed = third.value / m;
                       c.predicted = 2.0 * std::sin(x) / x;
                       c.error_budget = x * ws.budget_power() / m;
                       c.band = cfg.t1;
                       c.n_evals = 2 * third.n_evals;
                       settle(c);
                       rows.push_back(c);

                       // Signum law through the ladder.
                       const DisjointIntervalSet u = unite(g1, ws.family(x, Parity::odd));
                       const SignPartition part = ws.partition(u);
                       const DisjointIntervalSet pp = pull_back(part.plus, *g);
                       const DisjointIntervalSet pm = pull_back(part.minus, *g);
                       const IntegralResult tp = integrate_pulled_back(z_of, pp, *g, cfg.quad);
                       const IntegralResult tm = integrate_pulled_back(z_of, pm, *g, cfg.quad);
                       const IntegralResult sp = ws.integral(part.plus);
                       const IntegralResult sm = ws.integral(part.minus);
                       long extra_p = 0, extra_m = 0;
                       const double ends_p = endpoint_term(part.plus, pp, *g, ecfg, extra_p);
                       const double ends_m = endpoint_term(part.minus, pm, *g, ecfg, extra_m);

                       VerificationReport d = row(ws, "ladder_t2_ratio", "x", {x});
                       d.observed = tp.value;
                       d.predicted = -tm.value;
                       d.error_budget = 2.0 * x * ws.budget_power();
                       d.band = cfg.t2;
                       d.n_evals = 2 * (tp.n_evals + tm.n_evals);
                       settle(d);
                       rows.push_back(d);

                       VerificationReport e = row(ws, "ladder_t2_plus_identity", "x", {x});
                       e.observed = tp.value;
                       e.predicted = sp.value;
                       e.error_budget = tp.err_est + sp.err_est + ends_p;
                       e.n_evals = 2 * tp.n_evals + sp.n_evals + extra_p;
                       settle(e);
                       rows.push_back(e);

                       VerificationReport f = row(ws, "ladder_t2_minus_identity", "x", {x});
                       f.observed = tm.value;
                       f.predicted = sm.value;
                       f.error_budget = tm.err_est + sm.err_est + ends_m;
                       f.n_evals = 2 * tm.n_evals + sm.n_evals + extra_m;
                       settle(f);
                       rows.push_back(f);
                       return rows;
                     }});
  }
  return cells;
}

// ---------------------------------------------------------------------------
// One-call forms

std::vector<VerificationReport> verify_mean_value(const WindowSpec& w, const std::vector<double>& xs,
                                                  const std::vector<double>& ys, const VerifyConfig& cfg,
                                                  unsigned threads) {
  Workspace ws(w, cfg);
  return run_cells(mean_value_cells(ws, xs, ys), w, threads);
}

std::vector<VerificationReport> verify_signum_law(const WindowSpec& w, const std::vector<double>& xs,
                                                  const VerifyConfig& cfg, unsigned threads) {
  Workspace ws(w, cfg);
  return run_cells(signum_cells(ws, xs), w, threads);
}

std::vector<VerificationReport> verify_nu_sums(const WindowSpec& w, const std::vector<double>& taus,
                                               const VerifyConfig& cfg, unsigned threads) {
  Workspace ws(w, cfg);
  return run_cells(nu_sum_cells(ws, taus), w, threads);
}

std::vector<VerificationReport> verify_hardy_littlewood(const WindowSpec& w, const VerifyConfig& cfg) {
  Workspace ws(w, cfg);
  return run_cells(hardy_littlewood_cells(ws), w, 1);
}

std::vector<VerificationReport> verify_third_order(const WindowSpec& w, const std::vector<double>& xs,
                                                   const VerifyConfig& cfg, unsigned threads) {
  Workspace ws(w, cfg);
  return run_cells(third_order_cells(ws, xs), w, threads);
}

// ---------------------------------------------------------------------------
// Kernel, nu-points, sets, ladder self-checks

std::vector<Cell> kernel_cells(Workspace& ws, const std::vector<double>& ts) {
  for (const double t : ts) {
    if (!(t >= kKernelMin)) throw DomainError("kernel check needs t >= 50");
  }
  std::vector<Cell> cells;
  for (const double t : ts) {
    cells.push_back({"kernel", "t", {t}, [&ws, t] {
                       const EvalConfig& cfg = ws.config().eval;
                       const ZValue z = rs_z(t, cfg);
                       const ZValue o = z_oracle(t, cfg.oracle_digits);
                       VerificationReport a = row(ws, "kernel_z", "t", {t});
                       a.observed = z.value;
                       a.predicted = o.value;
                       a.error_budget = z.err_bound + o.err_bound;
                       a.n_evals = 1;
                       settle(a);

                       const ThetaValue th = theta_asymptotic(t);
                       const ThetaValue tho = theta_oracle(t);
                       VerificationReport b = row(ws, "kernel_theta_residual", "t", {t});
                       b.observed = (th.phase - tho.phase).to_double();
                       b.predicted = 0.0;
                       b.error_budget = 1e-9;
                       settle(b);
                       return std::vector{a, b};
                     }});
  }
  return cells;
}

std::vector<Cell> nupoint_cells(Workspace& ws, const std::vector<double>& taus, const std::vector<double>& xs) {
  for (const double tau : taus) {
    if (!(std::fabs(tau) <= M_PI)) throw DomainError("tau must lie in [-pi, pi]");
  }
  for (const double x : xs) validate_half_width(x, "x");
  std::vector<Cell> cells;
  for (const double tau : taus) {
    cells.push_back({"nupoints", "tau", {tau}, [&ws, tau] {
                       const WindowSpec& w = ws.window();
                       const PointValues pv = ws.points(tau);
                       const double gap = expected_gap(w.T);
                       double worst_gap = 0.0, worst_residual = 0.0;
                       for (std::size_t i = 0; i < pv.points.size(); ++i) {
                         const NuPoint& p = pv.points[i];
                         const DoubleDouble target = nu_target(p.nu, p.tau);
                         const double res = std::fabs((theta(p.t).phase - target).to_double()) / target.hi;
                         worst_residual = std::max(worst_residual, res);
                         if (i > 0) {
                           const double g = pv.points[i].t - pv.points[i - 1].t;
                           worst_gap = std::max(worst_gap, std::fabs(g / gap - 1.0));
                         }
                       }
                       const long n = static_cast<long>(pv.points.size());
                       VerificationReport a = row(ws, "nu_count", "tau", {tau});
                       a.observed = static_cast<double>(n);
                       a.predicted = expected_count(w);
                       a.error_budget = 2.0;
                       settle(a);
                       VerificationReport b = row(ws, "nu_gap_deviation", "tau", {tau});
                       b.observed = worst_gap;
                       b.predicted = 0.0;
                       b.error_budget = 0.05;
                       settle(b);
                       VerificationReport c = row(ws, "nu_roundtrip", "tau", {tau});
                       c.observed = worst_residual;
                       c.predicted = 0.0;
                       c.error_budget = 1e-10;
                       settle(c);
                       return std::vector{a, b, c};
                     }});
  }
  for (const double x : xs) {
    cells.push_back({"nu_width", "x", {x}, [&ws, x] {
                       const WindowSpec& w = ws.window();
                       const double width = 4.0 * x / std::log(w.T / (2.0 * M_PI));
                       double worst = 0.0;
                       for (const NuPoint& p : ws.points(0.0).points) {
                         if (p.nu % 2 != 0) continue;
                         const double lo = solve_nu_point(p.nu, -x, p.t).t;
                         const double hi = solve_nu_point(p.nu, x, p.t).t;
                         worst = std::max(worst, std::fabs((hi - lo) / width - 1.0));
                       }
                       VerificationReport r = row(ws, "nu_width_deviation", "x", {x});
                       r.observed = worst;
                       r.predicted = 0.0;
                       r.error_budget = 0.05;
                       settle(r);
                       return std::vector{r};
                     }});
  }
  return cells;
}

std::vector<Cell> set_cells(Workspace& ws, const std::vector<double>& xs) {
  for (const double x : xs) validate_half_width(x, "x");
  std::vector<Cell> cells;
  for (const double x : xs) {
    cells.push_back({"sets", "x", {x}, [&ws, x] {
                       const double H = ws.window().H;
                       const DisjointIntervalSet g1 = ws.family(x, Parity::even);
                       const DisjointIntervalSet g2 = ws.family(x, Parity::odd);
                       VerificationReport a = row(ws, "set_g1_measure", "x", {x});
                       a.observed = g1.measure();
                       a.predicted = x * H / M_PI;
                       a.error_budget = 5.0 * x;
                       settle(a);
                       VerificationReport b = row(ws, "set_g2_measure", "x", {x});
                       b.observed = g2.measure();
                       b.predicted = x * H / M_PI;
                       b.error_budget = 5.0 * x;
                       settle(b);
                       VerificationReport c = row(ws, "set_overlap", "x", {x});
                       c.observed = intersect(g1, g2).measure();
                       c.predicted = 0.0;
                       c.error_budget = 0.0;
                       settle(c);
                       return std::vector{a, b, c};
                     }});
  }
  cells.push_back({"set_tiling", "", {}, [&ws] {
                     const WindowSpec& w = ws.window();
                     const DisjointIntervalSet g1 = ws.family(M_PI / 2, Parity::even);
                     const DisjointIntervalSet g2 = ws.family(M_PI / 2, Parity::odd);
                     VerificationReport r = row(ws, "set_tiling", "", {});
                     r.observed = g1.measure() + g2.measure();
                     r.predicted = w.H;
                     r.error_budget = 1e-9;
                     settle(r);
                     return std::vector{r};
                   }});
  cells.push_back({"set_zeros", "", {}, [&ws] {
                     const DisjointIntervalSet u =
                         unite(ws.family(M_PI / 2, Parity::even), ws.family(M_PI / 2, Parity::odd));
                     const SignPartition part = ws.partition(u);
                     VerificationReport a = row(ws, "set_zero_count", "", {});
                     a.observed = static_cast<double>(part.zeros.size());
                     a.predicted = static_cast<double>(ws.points(0.0).points.size());
                     a.error_budget = 5.0;
                     a.n_evals = part.n_evals;
                     a.message = "near_tangencies=" + std::to_string(part.near_tangencies.size());
                     settle(a);
                     VerificationReport b = row(ws, "set_partition_conservation", "", {});
                     b.observed = part.plus.measure() + part.minus.measure();
                     b.predicted = u.measure();
                     b.error_budget = 1e-6 * u.measure();
                     settle(b);
                     return std::vector{a, b};
                   }});
  return cells;
}

std::vector<Cell> ladder_check_cells(Workspace& ws, std::uint64_t seed) {
  std::vector<Cell> cells;
  cells.push_back({"ladder_roundtrip", "", {}, [&ws, seed] {
                     const auto g = ws.ladder();
                     std::mt19937_64 rng(seed);
                     double worst = 0.0;
                     bool bracketed = true;
                     const auto phis = g->phis();
                     const auto ts = g->ts();
                     for (int i = 0; i < 100; ++i) {
                       const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
                       const double y = g->phi_lo() + u * (g->phi_hi() - g->phi_lo());
                       const double t = reverse_point(y, *g);
                       worst = std::max(worst, std::fabs((g->phi(DoubleDouble(t)) - DoubleDouble(y)).to_double()));
                       const auto k = static_cast<std::size_t>(std::upper_bound(phis.begin(), phis.end(), y) - phis.begin());
                       if (k > 0 && k < phis.size() && !(t >= ts[k - 1] && t <= ts[k])) bracketed = false;
                     }
                     VerificationReport r = row(ws, "ladder_roundtrip", "", {});
                     r.observed = worst;
                     r.predicted = 0.0;
                     r.error_budget = 1e-8;
                     settle(r);
                     if (!bracketed) {
                       r.pass = false;
                       r.message = "reverse point outside its bracketing grid panel";
                     }
                     return std::vector{r};
                   }});
  cells.push_back({"ladder_consistency", "", {}, [&ws] {
                     const auto g = ws.ladder();
                     const auto ts = g->ts();
                     const auto phis = g->phis();
                     const EvalConfig cfg = ws.config().eval;
                     const Integrand f = [cfg](const DoubleDouble& t) {
                       const double z = rs_z(t, cfg).value;
                       return omega(t.hi) * z * z;
                     };
                     constexpr int kCheckpoints = 8;
                     const std::size_t last = ts.size() - 1;
                     CompensatedSum cumulative;
                     double worst = 0.0;
                     long n_evals = 0;
                     std::size_t prev = 0;
                     for (int c = 1; c <= kCheckpoints; ++c) {
                       const std::size_t k = last * static_cast<std::size_t>(c) / kCheckpoints;
                       if (k == prev) continue;
                       const IntegralResult seg =
                           integrate(f, ts[prev], ts[k], initial_panels(ts[prev], ts[k], ws.config().quad.panels_per_gap),
                                     ws.config().quad);
                       cumulative.add(seg.value);
                       n_evals += seg.n_evals;
                       const double built = phis[k] - phis[0];
                       worst = std::max(worst, std::fabs(built - cumulative.value()) / cumulative.value());
                       prev = k;
                     }
                     VerificationReport r = row(ws, "ladder_consistency", "", {});
                     r.observed = worst;
                     r.predicted = 0.0;
                     r.error_budget = 1e-8;
                     r.n_evals = n_evals;
                     settle(r);
                     return std::vector{r};
                   }});
  return cells;
}

std::vector<VerificationReport> verify_third_order(const WindowSpec& w, const std::vector<double>& xs,
                                                   std::shared_ptr<const LadderGrid> g, const VerifyConfig& cfg,
                                                   unsigned threads) {
  Workspace ws(w, cfg);
  ws.adopt_ladder(std::move(g));
  return run_cells(third_order_cells(ws, xs), w, threads);
}

}  // namespace zlaw
