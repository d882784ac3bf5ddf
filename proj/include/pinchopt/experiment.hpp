// SPDX-License-Identifier: Apache-2.0
//
// Experiment surface behind the CLI: random scenario generation, sweeps
// over power / blockage / users / antenna count with CSV output, and the
// timing benchmark comparing the two inner solvers.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pinchopt/mm_driver.hpp"
#include "pinchopt/model.hpp"

namespace pinchopt {

/// RF and geometry defaults for generated scenarios: 28 GHz carrier,
/// 3 m waveguide height, -90 dBm noise, half-wavelength spacing, a
/// 20 m waveguide and 5 antennas.
struct ScenarioDefaults {
  double fc = 28e9;
  double t = 3.0;
  double ptx_dbm = 40.0;
  double sigma2_dbm = -90.0;
  double alpha = 0.01;
  double d1 = -10.0;
  double d2 = 10.0;
  double delta = 0.0;  ///< <= 0 means half a wavelength
  std::size_t num_pinch = 5;
  double n_eff = 1.4;
};

/// Rectangular service area centered on the waveguide: users are drawn
/// i.i.d. uniform over it.
struct ScenarioGenSpec {
  double rect_width = 10.0;   ///< y extent, m
  double rect_length = 40.0;  ///< x extent, m
  std::size_t num_users = 5;
  std::uint64_t seed = 0;
};

ScenarioConfig generate_scenario(const ScenarioGenSpec& spec,
                                 const ScenarioDefaults& defaults = {});

enum class SweepAxis { kPtxDbm, kAlpha, kUsers, kPinch };
enum class SolverChoice { kCsm, kBsm, kBoth };

struct ExperimentPlan {
  ScenarioDefaults base;
  ScenarioGenSpec gen;
  SweepAxis axis = SweepAxis::kPtxDbm;
  std::vector<double> values;
  int trials = 1;            ///< fresh user draws per sweep point
  SolverChoice solver = SolverChoice::kBoth;
  std::uint64_t seed = 0;
  SolveOptions solve;

  void validate() const;
};

struct ExperimentRow {
  double sweep_value = 0.0;
  int trial = 0;
  std::string solver;
  double min_snr_linear = 0.0;
  double min_snr_db = 0.0;
  double cas_min_snr_db = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";  ///< "ok" or "error: ..."; errors keep the run going

  bool ok() const { return status == "ok"; }
};

/// One row per (sweep value, trial, solver). User draws depend only on
/// the trial index, so every sweep value sees the same users per trial.
std::vector<ExperimentRow> run_experiment(const ExperimentPlan& plan);
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct BenchmarkRow {
  double sweep_value = 0.0;
  std::size_t num_users = 0;
  std::size_t num_pinch = 0;
  int reps = 0;
  double csm_median_inner_s = 0.0;
  double bsm_median_inner_s = 0.0;
  double csm_over_bsm = 0.0;
  std::uint64_t seed = 0;
};

/// Median per-iteration inner-solver wall time for both solvers on
/// identical instances, repeated `reps` times per sweep value.
std::vector<BenchmarkRow> run_benchmark(const ExperimentPlan& plan, int reps = 10);
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);

}  // namespace pinchopt
