// SPDX-License-Identifier: Apache-2.0
//
// Bisection search: per-coordinate maximization through the epigraph
// level s. At a level s every user admits positions within a radius of
// its vertex; the intersection of those windows with the feasible region
// is nonempty exactly when level s is achievable.
#pragma once

#include <optional>

#include "pinchopt/intervals.hpp"
#include "pinchopt/surrogate.hpp"

namespace pinchopt::bsm {

/// Feasibility window [lo, hi] for one level; empty when some user cannot
/// reach the level or the per-user windows do not overlap.
struct LevelWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

/// Half-width of the set {x : h(x) >= s} around the vertex,
/// sqrt((peak - s) / curvature). Empty for s above the peak.
std::optional<double> level_radius(const Parabola& parabola, double s);

/// Intersection of all user windows at level s.
LevelWindow level_window(const CoordinateProblem& problem, double s);

struct LevelBounds {
  double lo = 0.0;  ///< attained envelope value at some feasible point
  double hi = 0.0;  ///< min over users of the parabola peak
};

/// Initial bisection bracket. The lower bound is the best envelope value
/// over interval endpoints and in-interval vertices (a sufficient
/// candidate subset); the upper bound is the smallest peak. Throws
/// NoFeasiblePosition when the region is empty.
LevelBounds level_bounds(const CoordinateProblem& problem,
                         const IntervalSet& region);

struct BisectionResult {
  double level = 0.0;   ///< highest level with a proven feasible position
  double x = 0.0;       ///< midpoint of the clipped window at that level
  int iterations = 0;   ///< bisection steps taken (0 on the fast path)
  double tol_abs = 0.0; ///< absolute tolerance used, tau_rel * max(1, |hi|)
};

/// Bisection on the level until the bracket is narrower than the
/// tolerance. When the upper bound itself is feasible at entry it is
/// returned directly. Throws NoFeasiblePosition when the region is empty.
BisectionResult maximize_coordinate(const CoordinateProblem& problem,
                                    const IntervalSet& region,
                                    double tau_rel = 1e-12);

}  // namespace pinchopt::bsm
