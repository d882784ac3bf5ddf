// SPDX-License-Identifier: Apache-2.0
//
// Closed-interval set algebra for the per-coordinate feasible regions:
// the waveguide segment minus open spacing neighborhoods of the other
// antennas is a disjoint union of closed intervals.
#pragma once

#include <span>
#include <vector>

#include "pinchopt/model.hpp"

namespace pinchopt {

/// Closed interval [lo, hi]; lo == hi is a single admissible point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Sorted disjoint union of closed intervals.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Normalizes: drops malformed entries (lo > hi), sorts, merges
  /// intervals that overlap or whose gap is below a 1e-12 snap.
  explicit IntervalSet(std::vector<Interval> items);

  const std::vector<Interval>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  /// Closed-endpoint membership test.
  bool contains(double x) const;

  double total_length() const;

 private:
  friend IntervalSet feasible_region(std::span<const double>,
                                     const ScenarioConfig&);
  friend IntervalSet intersect(const IntervalSet&, const Interval&);
  static IntervalSet from_sorted_disjoint(std::vector<Interval> items);

  std::vector<Interval> items_;
};

/// Feasible positions for one antenna given the others: [d1, d2] minus the
/// open neighborhoods (x_q - delta, x_q + delta). Points at distance
/// exactly delta survive; the result may be empty.
IntervalSet feasible_region(std::span<const double> others,
                            const ScenarioConfig& cfg);

/// Clips the set to a closed window; a malformed window (lo > hi) yields
/// the empty set.
IntervalSet intersect(const IntervalSet& set, const Interval& window);

}  // namespace pinchopt
