#include "zlaw/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

#include "zlaw/double_double.hpp"

namespace zlaw {

DisjointIntervalSet::DisjointIntervalSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!(intervals_[i].lo < intervals_[i].hi)) {
      throw std::invalid_argument("DisjointIntervalSet: interval with lo >= hi");
    }
    if (i > 0 && intervals_[i - 1].hi > intervals_[i].lo) {
      throw std::invalid_argument("DisjointIntervalSet: overlapping or unsorted intervals");
    }
  }
}

DisjointIntervalSet DisjointIntervalSet::normalized(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& iv) { return !(iv.lo < iv.hi); });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<Interval> out;
  out.reserve(intervals.size());
  for (const Interval& iv : intervals) {
    if (!out.empty() && out.back().hi > iv.lo) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return DisjointIntervalSet(std::move(out));
}

double DisjointIntervalSet::measure() const {
  CompensatedSum sum;
  for (const Interval& iv : intervals_) sum.add(iv.length());
  return sum.value();
}

DisjointIntervalSet DisjointIntervalSet::clip(double lo, double hi) const {
  std::vector<Interval> out;
  for (const Interval& iv : intervals_) {
    const Interval c{std::max(iv.lo, lo), std::min(iv.hi, hi)};
    if (c.lo < c.hi) out.push_back(c);
  }
  return DisjointIntervalSet(std::move(out));
}

bool DisjointIntervalSet::contains(double t) const {
  const auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                                   [](double x, const Interval& iv) { return x < iv.lo; });
  return it != intervals_.begin() && t <= std::prev(it)->hi;
}

DisjointIntervalSet unite(const DisjointIntervalSet& a, const DisjointIntervalSet& b) {
  std::vector<Interval> all(a.intervals().begin(), a.intervals().end());
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return DisjointIntervalSet::normalized(std::move(all));
}

DisjointIntervalSet intersect(const DisjointIntervalSet& a, const DisjointIntervalSet& b) {
  std::vector<Interval> out;
  const auto xs = a.intervals();
  const auto ys = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double lo = std::max(xs[i].lo, ys[j].lo);
    const double hi = std::min(xs[i].hi, ys[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (xs[i].hi < ys[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return DisjointIntervalSet(std::move(out));
}

}  // namespace zlaw
