// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/solver_bsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pinchopt::bsm {

namespace {

constexpr int kMaxBisectionSteps = 200;

struct BoundsWithWitness {
  LevelBounds bounds;
  double x_at_lo = 0.0;  // feasible point attaining bounds.lo
};

BoundsWithWitness level_bounds_impl(const CoordinateProblem& problem,
                                    const IntervalSet& region) {
  if (region.empty())
    throw NoFeasiblePosition("bsm: empty feasible region for coordinate");

  double hi = std::numeric_limits<double>::infinity();
  for (const Parabola& pb : problem.parabolas) hi = std::min(hi, pb.peak);

  double lo = -std::numeric_limits<double>::infinity();
  double witness = region.items().front().lo;
  auto consider = [&](double x) {
    const double v = problem.envelope(x);
    if (v > lo) {
      lo = v;
      witness = x;
    }
  };
  for (const Interval& iv : region.items()) {
    consider(iv.lo);
    if (iv.hi > iv.lo) consider(iv.hi);
    for (const Parabola& pb : problem.parabolas) {
      if (pb.vertex >= iv.lo && pb.vertex <= iv.hi) consider(pb.vertex);
    }
  }
  return BoundsWithWitness{LevelBounds{lo, hi}, witness};
}

bool window_hits_region(const LevelWindow& w, const IntervalSet& region) {
  if (w.empty) return false;
  for (const Interval& iv : region.items()) {
    if (std::max(w.lo, iv.lo) <= std::min(w.hi, iv.hi)) return true;
  }
  return false;
}

// Midpoint of the best clipped interval at a proven-feasible level: the
// interval whose clipped midpoint achieves the largest envelope value,
// ties toward the smallest x.
std::optional<CoordinateOptimum> pick_position(const CoordinateProblem& problem,
                                               const IntervalSet& region,
                                               const LevelWindow& w) {
  if (w.empty) return std::nullopt;
  std::optional<CoordinateOptimum> best;
  for (const Interval& iv : region.items()) {
    const double lo = std::max(w.lo, iv.lo);
    const double hi = std::min(w.hi, iv.hi);
    if (lo > hi) continue;
    const double mid = 0.5 * (lo + hi);
    const double value = problem.envelope(mid);
    const double tol = best ? 1e-12 * std::abs(best->value) : 0.0;
    if (!best || value > best->value + tol ||
        (std::abs(value - best->value) <= tol && mid < best->x))
      best = CoordinateOptimum{mid, value};
  }
  return best;
}

}  // namespace

std::optional<double> level_radius(const Parabola& parabola, double s) {
  if (s > parabola.peak) return std::nullopt;
  return std::sqrt((parabola.peak - s) / parabola.curvature);
}

LevelWindow level_window(const CoordinateProblem& problem, double s) {
  LevelWindow w;
  w.lo = -std::numeric_limits<double>::infinity();
  w.hi = std::numeric_limits<double>::infinity();
  for (const Parabola& pb : problem.parabolas) {
    const std::optional<double> radius = level_radius(pb, s);
    if (!radius) return LevelWindow{};  // some user cannot reach level s
    w.lo = std::max(w.lo, pb.vertex - *radius);
    w.hi = std::min(w.hi, pb.vertex + *radius);
  }
  w.empty = w.lo > w.hi;
  return w;
}

LevelBounds level_bounds(const CoordinateProblem& problem,
                         const IntervalSet& region) {
  return level_bounds_impl(problem, region).bounds;
}

BisectionResult maximize_coordinate(const CoordinateProblem& problem,
                                    const IntervalSet& region,
                                    double tau_rel) {
  if (!(tau_rel > 0.0))
    throw std::invalid_argument("bsm: requires tau_rel > 0");
  const BoundsWithWitness entry = level_bounds_impl(problem, region);
  double s_lo = entry.bounds.lo;
  double s_hi = entry.bounds.hi;
  // The threshold tracks the current bracket so it ends up scaled by the
  // answer itself: a hugely negative entry lower bound (envelope at a bad
  // endpoint) must not freeze the tolerance orders of magnitude above the
  // optimum, and scales far below one must still refine.
  const auto tol_at = [tau_rel](double lo, double hi) {
    return tau_rel * std::max({std::abs(hi), std::abs(lo), 1e-300});
  };

  BisectionResult out;
  out.tol_abs = tol_at(s_lo, s_hi);

  // Fast path: the upper bound itself is achievable (single user or
  // degenerate geometry), no bisection needed.
  if (const auto at_hi = pick_position(problem, region, level_window(problem, s_hi))) {
    out.level = s_hi;
    out.x = at_hi->x;
    return out;
  }

  // Invariant: feasible at s_lo, infeasible at s_hi.
  double last_good = s_lo;
  while (s_hi - s_lo > tol_at(s_lo, s_hi) &&
         out.iterations < kMaxBisectionSteps) {
    const double mid = 0.5 * (s_lo + s_hi);
    if (window_hits_region(level_window(problem, mid), region)) {
      s_lo = mid;
      last_good = mid;
    } else {
      s_hi = mid;
    }
    ++out.iterations;
  }
  out.tol_abs = tol_at(s_lo, s_hi);

  std::optional<CoordinateOptimum> pick =
      pick_position(problem, region, level_window(problem, s_lo));
  if (!pick) pick = pick_position(problem, region, level_window(problem, last_good));
  if (!pick) {
    // Roundoff starved the entry level of its own witness; fall back to it.
    pick = CoordinateOptimum{entry.x_at_lo, problem.envelope(entry.x_at_lo)};
  }
  out.level = s_lo;
  out.x = pick->x;
  return out;
}

}  // namespace pinchopt::bsm
