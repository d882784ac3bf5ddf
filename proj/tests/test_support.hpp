// SPDX-License-Identifier: Apache-2.0
//
// Shared generators for tests: paper-scale random scenarios and synthetic
// per-coordinate envelope instances. Test-only; production code must not
// include this.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "pinchopt/intervals.hpp"
#include "pinchopt/mm_driver.hpp"
#include "pinchopt/model.hpp"
#include "pinchopt/rng.hpp"
#include "pinchopt/surrogate.hpp"

namespace pinchopt::testing {

/// Scenario with users uniform over a 40 m x 10 m area around a 20 m
/// waveguide at 28 GHz, half-wavelength spacing, -90 dBm noise.
inline ScenarioConfig random_scenario(Rng& rng, std::size_t num_users,
                                      std::size_t num_pinch,
                                      double alpha = 0.01,
                                      double ptx_dbm = 40.0) {
  ScenarioConfig cfg;
  cfg.d1 = -10.0;
  cfg.d2 = 10.0;
  cfg.t = 3.0;
  cfg.fc = 28e9;
  cfg.delta = 0.5 * cfg.wavelength();
  cfg.ptx = dbm_to_watt(ptx_dbm);
  cfg.sigma2 = dbm_to_watt(-90.0);
  cfg.alpha = alpha;
  cfg.num_pinch = num_pinch;
  cfg.feed_x = cfg.d1;
  cfg.service_center_x = 0.0;
  cfg.users.reserve(num_users);
  for (std::size_t u = 0; u < num_users; ++u)
    cfg.users.push_back(UserPosition{rng.uniform(-20.0, 20.0), rng.uniform(-5.0, 5.0)});
  return cfg;
}

/// Uniform layout draw over [d1, d2]^P (not necessarily spacing-feasible);
/// for probing the surrogate bound over the whole box.
inline PinchLayout random_box_layout(const ScenarioConfig& cfg, Rng& rng) {
  PinchLayout out;
  out.xs.resize(cfg.num_pinch);
  for (double& x : out.xs) x = rng.uniform(cfg.d1, cfg.d2);
  return out;
}

/// Synthetic envelope instance: vertices in [-12, 12], peaks in [0, 50],
/// curvatures log-uniform across four decades.
inline CoordinateProblem random_problem(Rng& rng, std::size_t num_users) {
  CoordinateProblem prob;
  prob.parabolas.reserve(num_users);
  for (std::size_t u = 0; u < num_users; ++u) {
    prob.parabolas.push_back(Parabola{rng.uniform(-12.0, 12.0),
                                      rng.uniform(0.0, 50.0),
                                      std::pow(10.0, rng.uniform(-2.0, 2.0))});
  }
  return prob;
}

/// Random disjoint region: the waveguide minus spacing neighborhoods of a
/// few random blockers.
inline IntervalSet random_region(Rng& rng) {
  ScenarioConfig cfg;
  cfg.d1 = -10.0;
  cfg.d2 = 10.0;
  cfg.delta = rng.uniform(0.3, 1.5);
  cfg.num_pinch = 1;
  const int blockers = static_cast<int>(rng.uniform(0.0, 4.0));
  std::vector<double> others;
  for (int i = 0; i < blockers; ++i) others.push_back(rng.uniform(-9.0, 9.0));
  IntervalSet region = feasible_region(others, cfg);
  if (region.empty()) return IntervalSet({Interval{-10.0, 10.0}});
  return region;
}

/// Worked two-user instance used across the solver tests:
/// h1(x) = 10 - (x-1)^2, h2(x) = 8 - 0.5 (x-5)^2.
inline CoordinateProblem worked_instance() {
  CoordinateProblem prob;
  prob.parabolas = {Parabola{1.0, 10.0, 1.0}, Parabola{5.0, 8.0, 0.5}};
  return prob;
}

}  // namespace pinchopt::testing
