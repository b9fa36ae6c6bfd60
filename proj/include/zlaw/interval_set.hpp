#pragma once

#include <span>
#include <vector>

namespace zlaw {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted union of closed intervals with lo < hi and hi_i <= lo_{i+1}.
/// Touching intervals are kept apart so per-piece structure survives unions.
class DisjointIntervalSet {
 public:
  DisjointIntervalSet() = default;

  /// Throws std::invalid_argument unless the intervals are already sorted,
  /// non-degenerate and non-overlapping.
  explicit DisjointIntervalSet(std::vector<Interval> intervals);

  /// Sorts, drops empty intervals and merges overlapping ones.
  static DisjointIntervalSet normalized(std::vector<Interval> intervals);

  std::span<const Interval> intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

  double measure() const;

  DisjointIntervalSet clip(double lo, double hi) const;
  bool contains(double t) const;

  friend bool operator==(const DisjointIntervalSet&, const DisjointIntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

DisjointIntervalSet unite(const DisjointIntervalSet& a, const DisjointIntervalSet& b);
DisjointIntervalSet intersect(const DisjointIntervalSet& a, const DisjointIntervalSet& b);

}  // namespace zlaw
