// Verification suites: observed vs predicted main terms per grid cell.
#pragma once

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "zlaw/interval_set.hpp"
#include "zlaw/ladder.hpp"
#include "zlaw/nupoints.hpp"
#include "zlaw/quad.hpp"
#include "zlaw/sets.hpp"
#include "zlaw/special.hpp"

namespace zlaw {

/// Closed acceptance band for a ratio; an empty band (lo > hi) accepts nothing.
struct Band {
  double lo = 1.0;
  double hi = 0.0;
  bool contains(double r) const { return r >= lo && r <= hi; }
};

struct VerificationReport {
  std::string scenario;
  double T = 0.0;
  double H = 0.0;
  std::string param_name;      // "x", "tau", "x;y", or empty
  std::vector<double> params;
  double observed = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;          // observed / predicted; NaN when predicted is 0
  double error_budget = 0.0;
  Band band;
  double safety = 1.0;
  bool pass_band = false;      // ratio inside band
  bool pass_budget = false;    // |observed - predicted| <= error_budget * safety
  bool pass = false;           // either of the two
  bool error = false;          // the cell threw; message holds the reason
  std::string message;
  long n_evals = 0;
  double seconds = 0.0;
};

/// Fills ratio and the pass flags from observed, predicted, band, budget.
void settle(VerificationReport& r);

struct VerifyConfig {
  EvalConfig eval;
  QuadConfig quad;
  double zero_tol = kDefaultZeroTol;
  /// The exponent 1/6 + epsilon of the error budgets uses this epsilon.
  double epsilon = 0.05;
  double safety = 1.0;
  /// O-constant in the plain-sum and parity budgets C T^(1/6 + epsilon). The
  /// plain sum tracks (ln(T/2pi)/2pi) times the window integral of Z; at
  /// desk scale it reaches about 3.2 T^(1/6 + epsilon).
  double sum_constant = 4.0;
  Band t1{0.8, 1.2};
  Band t2{0.8, 1.25};
  Band lemma2{0.9, 1.1};
  Band parity{0.9, 1.1};
  Band consistency{0.95, 1.05};
  Band slope{0.8, 1.2};
  /// |integral over [T, T+H]| / H allowed for the Hardy-Littlewood cell.
  double hl_fraction = 0.05;
  double tiling_rel = 1e-6;
  double ladder_rel = 1e-6;
  /// Gauss-Legendre panels of 8 nodes for the tau integral of the even sum.
  int tau_panels = 8;
  /// The ladder is built on [T, T + ladder_extent * H].
  double ladder_extent = 1.5;
  double ladder_step = 1e-13;
};

/// Thread-safe memo: the first caller computes, later callers wait for it.
template <class K, class V>
class Memo {
 public:
  template <class F>
  V get(const K& key, F&& compute) {
    std::unique_lock<std::mutex> lock(mutex_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      auto fut = it->second;
      lock.unlock();
      return fut.get();
    }
    std::promise<V> promise;
    map_.emplace(key, promise.get_future().share());
    lock.unlock();
    try {
      V v = compute();
      promise.set_value(v);
      return v;
    } catch (...) {
      promise.set_exception(std::current_exception());
      throw;
    }
  }

  /// Stores v unless the key is already present.
  void put(const K& key, V v) {
    std::promise<V> promise;
    promise.set_value(std::move(v));
    std::lock_guard<std::mutex> lock(mutex_);
    map_.emplace(key, promise.get_future().share());
  }

 private:
  std::mutex mutex_;
  std::map<K, std::shared_future<V>> map_;
};

/// Z at the nu-points of one shift, in increasing t.
struct PointValues {
  std::vector<NuPoint> points;
  std::vector<double> z;
};

/// Shared, memoized state for the suites of one window. Everything cached is a
/// pure function of its key, so sharing never changes a report.
class Workspace {
 public:
  Workspace(const WindowSpec& w, const VerifyConfig& cfg);

  const WindowSpec& window() const { return w_; }
  const VerifyConfig& config() const { return cfg_; }

  DisjointIntervalSet family(double x, Parity parity);
  /// Integral of Z over s, assembled from per-interval integrals.
  IntegralResult integral(const DisjointIntervalSet& s);
  /// sign_partition(s), assembled from per-interval partitions.
  SignPartition partition(const DisjointIntervalSet& s);
  PointValues points(double tau);
  /// Built on [T, T + ladder_extent * H] on first use unless one was adopted.
  std::shared_ptr<const LadderGrid> ladder();
  void adopt_ladder(std::shared_ptr<const LadderGrid> g);

  double budget_power() const;  // T^(1/6 + epsilon)

 private:
  WindowSpec w_;
  VerifyConfig cfg_;
  Memo<std::pair<double, int>, DisjointIntervalSet> families_;
  Memo<std::pair<double, double>, IntegralResult> integrals_;
  Memo<std::pair<double, double>, SignPartition> partitions_;
  Memo<double, PointValues> points_;
  Memo<int, std::shared_ptr<const LadderGrid>> ladder_;
};

/// A unit of work producing one or more report rows.
struct Cell {
  std::string scenario;
  std::string param_name;
  std::vector<double> params;
  std::function<std::vector<VerificationReport>()> run;
};

/// Runs cells on up to `threads` workers. Output order follows the cell order;
/// a throwing cell yields one row with error set.
std::vector<VerificationReport> run_cells(const std::vector<Cell>& cells, const WindowSpec& w, unsigned threads,
                                          bool record_time = true);

std::vector<Cell> mean_value_cells(Workspace& ws, const std::vector<double>& xs, const std::vector<double>& ys);
std::vector<Cell> signum_cells(Workspace& ws, const std::vector<double>& xs);
std::vector<Cell> nu_sum_cells(Workspace& ws, const std::vector<double>& taus);
std::vector<Cell> consistency_cells(Workspace& ws, const std::vector<double>& xs);
std::vector<Cell> hardy_littlewood_cells(Workspace& ws);
std::vector<Cell> third_order_cells(Workspace& ws, const std::vector<double>& xs);

/// rs_z against z_oracle, and the asymptotic theta against the oracle theta.
std::vector<Cell> kernel_cells(Workspace& ws, const std::vector<double>& ts);
/// Count, gap and window-width laws of the nu-points, and the theta round trip.
std::vector<Cell> nupoint_cells(Workspace& ws, const std::vector<double>& taus, const std::vector<double>& xs);
/// Measures of G1, G2, their disjointness, the pi/2 tiling, and the zero count
/// of the window against its Gram-point count.
std::vector<Cell> set_cells(Workspace& ws, const std::vector<double>& xs);
/// Inverse round trip on random targets and the cumulative-integral check of the ladder.
std::vector<Cell> ladder_check_cells(Workspace& ws, std::uint64_t seed);

// One-call forms of the suites.
std::vector<VerificationReport> verify_mean_value(const WindowSpec& w, const std::vector<double>& xs,
                                                  const std::vector<double>& ys, const VerifyConfig& cfg = {},
                                                  unsigned threads = 1);
std::vector<VerificationReport> verify_signum_law(const WindowSpec& w, const std::vector<double>& xs,
                                                  const VerifyConfig& cfg = {}, unsigned threads = 1);
std::vector<VerificationReport> verify_nu_sums(const WindowSpec& w, const std::vector<double>& taus,
                                               const VerifyConfig& cfg = {}, unsigned threads = 1);
/// The ratio |integral over [T, T+H]| / H and the tiling identity against G1(pi/2) u G2(pi/2).
std::vector<VerificationReport> verify_hardy_littlewood(const WindowSpec& w, const VerifyConfig& cfg = {});
std::vector<VerificationReport> verify_third_order(const WindowSpec& w, const std::vector<double>& xs,
                                                   const VerifyConfig& cfg = {}, unsigned threads = 1);
/// Same on a given grid; cells whose pullback leaves the grid report a coverage error.
std::vector<VerificationReport> verify_third_order(const WindowSpec& w, const std::vector<double>& xs,
                                                   std::shared_ptr<const LadderGrid> g,
                                                   const VerifyConfig& cfg = {}, unsigned threads = 1);

/// Pulls every interval of s back through the ladder. Throws CoverageError
/// when s leaves [phi_lo, phi_hi].
DisjointIntervalSet pull_back(const DisjointIntervalSet& s, const LadderGrid& g);

/// Integral of omega(t) f(phi(t)) Z(t)^2 over a pulled-back set.
IntegralResult integrate_pulled_back(const std::function<double(const DoubleDouble&)>& f,
                                     const DisjointIntervalSet& pulled, const LadderGrid& g, const QuadConfig& qc);

}  // namespace zlaw
