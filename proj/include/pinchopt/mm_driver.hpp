// SPDX-License-Identifier: Apache-2.0
//
// Multi-start outer loop: each iteration rebuilds the tangent minorizer
// at the current layout and sweeps the coordinates with one of the two
// inner solvers until the true min-SNR stops improving.
#pragma once

#include <cstdint>
#include <vector>

#include "pinchopt/model.hpp"
#include "pinchopt/rng.hpp"

namespace pinchopt {

enum class InnerSolver { kCsm, kBsm };
enum class SweepOrder { kGaussSeidel, kJacobi };

struct SolveOptions {
  InnerSolver inner = InnerSolver::kCsm;
  int max_iters = 100;
  double conv_tol = 1e-6;  ///< relative min-SNR change that counts as converged
  int n_starts = 1;
  std::uint64_t seed = 0;
  SweepOrder sweep = SweepOrder::kGaussSeidel;
  double tau_rel = 1e-12;  ///< bisection tolerance (BSM only)

  void validate() const;
};

/// Trace of one start. trajectory[0] is the starting objective; each
/// later entry is the true min-SNR after one full coordinate sweep.
struct StartReport {
  PinchLayout layout;
  std::vector<double> trajectory;
  int iterations = 0;
  std::vector<double> iter_time_s;       ///< wall time per iteration
  std::vector<double> inner_time_s;      ///< inner-solver share per iteration
  std::vector<double> surrogate_time_s;  ///< minorizer-build share per iteration
};

struct SolveReport {
  PinchLayout best_layout;
  double best_objective = 0.0;
  std::size_t best_start = 0;
  InnerSolver inner_used = InnerSolver::kCsm;
  std::vector<StartReport> starts;
};

/// Uniform draw from the feasible layouts: sorted uniforms on the slack
/// interval plus the mandatory spacing offsets.
PinchLayout random_feasible_layout(const ScenarioConfig& cfg, Rng& rng);

/// One start of the iterative scheme from a feasible layout.
StartReport run_single(const PinchLayout& start, const ScenarioConfig& cfg,
                       const SolveOptions& opts);

/// Runs n_starts independent starts and returns the best. The first slot
/// is the fixed baseline layout whenever it is feasible, so the optimized
/// result can never fall below the baseline.
SolveReport solve(const ScenarioConfig& cfg, const SolveOptions& opts);

}  // namespace pinchopt
