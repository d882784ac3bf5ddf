// SPDX-License-Identifier: Apache-2.0
//
// Candidate search: exact per-coordinate maximization of the lower
// envelope of downward parabolas. Over a closed interval the envelope
// attains its maximum at an interval endpoint, a parabola vertex, or a
// pairwise crossing, so enumerating those points is exhaustive.
#pragma once

#include <vector>

#include "pinchopt/intervals.hpp"
#include "pinchopt/surrogate.hpp"

namespace pinchopt::csm {

enum class CandidateKind { kEndpoint, kVertex, kCrossing };

struct Candidate {
  double x = 0.0;
  CandidateKind kind = CandidateKind::kEndpoint;
  double value = 0.0;  ///< envelope value at x, recomputed on construction
};

struct CandidateSet {
  std::vector<Candidate> points;
};

/// All optimum candidates inside one closed interval: both endpoints,
/// every in-interval vertex, and every real pairwise crossing that lands
/// in the interval (with a 1e-10 boundary slack, clamped back inside).
CandidateSet candidates(const CoordinateProblem& problem, const Interval& iv);

/// Exact envelope maximum over a disjoint union of intervals. Ties are
/// broken toward the smallest x. Throws NoFeasiblePosition when the
/// region is empty.
CoordinateOptimum maximize_coordinate(const CoordinateProblem& problem,
                                      const IntervalSet& region);

}  // namespace pinchopt::csm
