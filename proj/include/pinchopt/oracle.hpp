// SPDX-License-Identifier: Apache-2.0
//
// Independent verification paths: brute-force grid search for the inner
// and full problems, a Monte Carlo estimate of the mean received SNR
// from channel realizations, and finite-difference calculus checks.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pinchopt/intervals.hpp"
#include "pinchopt/model.hpp"
#include "pinchopt/rng.hpp"
#include "pinchopt/surrogate.hpp"

namespace pinchopt::oracle {

/// Best grid point of the parabola envelope over a region. Interval
/// endpoints are always evaluated so boundary optima cannot be missed by
/// spacing misalignment. Ties keep the smallest x.
CoordinateOptimum grid_search_coordinate(const CoordinateProblem& problem,
                                         const IntervalSet& region,
                                         double spacing);

struct GridSearchResult {
  PinchLayout layout;
  double value = 0.0;
};

/// Brute force over the full layout grid for the true min-SNR objective.
/// Guarded to num_pinch <= 2; anything larger is combinatorially out of
/// reach for an oracle.
GridSearchResult grid_search_full(const ScenarioConfig& cfg, double spacing);

struct MonteCarloEstimate {
  std::vector<double> mean;       ///< per-user mean SNR estimate
  std::vector<double> std_error;  ///< per-user standard error of the mean
  std::size_t samples = 0;
};

/// Samples Bernoulli LoS indicators and independent uniform phase offsets
/// per user/antenna term and averages the received SNR. Converges to
/// average_snr at the usual 1/sqrt(n) rate.
MonteCarloEstimate monte_carlo_received_power(const PinchLayout& layout,
                                              const ScenarioConfig& cfg,
                                              std::size_t n_samples, Rng& rng);

/// Central-difference gradient of a scalar field over layouts.
std::vector<double> finite_diff_gradient(
    const std::function<double(const PinchLayout&)>& fn, const PinchLayout& at,
    double step);

}  // namespace pinchopt::oracle
