// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/intervals.hpp"

#include <algorithm>
#include <cmath>

namespace pinchopt {

namespace {
constexpr double kMergeSnap = 1e-12;  // m
}

IntervalSet::IntervalSet(std::vector<Interval> items) {
  std::erase_if(items, [](const Interval& iv) {
    return !(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi);
  });
  std::sort(items.begin(), items.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : items) {
    if (!items_.empty() && iv.lo - items_.back().hi <= kMergeSnap)
      items_.back().hi = std::max(items_.back().hi, iv.hi);
    else
      items_.push_back(iv);
  }
}

IntervalSet IntervalSet::from_sorted_disjoint(std::vector<Interval> items) {
  IntervalSet out;
  out.items_ = std::move(items);
  return out;
}

bool IntervalSet::contains(double x) const {
  for (const Interval& iv : items_) {
    if (x < iv.lo) return false;
    if (x <= iv.hi) return true;
  }
  return false;
}

double IntervalSet::total_length() const {
  double acc = 0.0;
  for (const Interval& iv : items_) acc += iv.length();
  return acc;
}

IntervalSet feasible_region(std::span<const double> others,
                            const ScenarioConfig& cfg) {
  std::vector<Interval> pieces{{cfg.d1, cfg.d2}};
  std::vector<Interval> next;
  for (double xq : others) {
    const double lo = xq - cfg.delta;  // removed neighborhood is open, so
    const double hi = xq + cfg.delta;  // lo and hi themselves stay feasible
    next.clear();
    for (const Interval& iv : pieces) {
      if (iv.lo <= lo) next.push_back({iv.lo, std::min(iv.hi, lo)});
      if (iv.hi >= hi) next.push_back({std::max(iv.lo, hi), iv.hi});
    }
    pieces.swap(next);
  }
  return IntervalSet::from_sorted_disjoint(std::move(pieces));
}

IntervalSet intersect(const IntervalSet& set, const Interval& window) {
  std::vector<Interval> out;
  out.reserve(set.size());
  for (const Interval& iv : set.items()) {
    const Interval clipped{std::max(iv.lo, window.lo), std::min(iv.hi, window.hi)};
    if (clipped.lo <= clipped.hi) out.push_back(clipped);
  }
  return IntervalSet::from_sorted_disjoint(std::move(out));
}

}  // namespace pinchopt
