// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/mm_driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pinchopt/intervals.hpp"
#include "pinchopt/solver_bsm.hpp"
#include "pinchopt/solver_csm.hpp"
#include "pinchopt/surrogate.hpp"

namespace pinchopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> other_coordinates(const PinchLayout& layout, std::size_t p) {
  std::vector<double> others;
  others.reserve(layout.size() - 1);
  for (std::size_t q = 0; q < layout.size(); ++q) {
    if (q != p) others.push_back(layout.xs[q]);
  }
  return others;
}

double solve_coordinate(const CoordinateProblem& prob, const IntervalSet& region,
                        const SolveOptions& opts) {
  if (opts.inner == InnerSolver::kCsm)
    return csm::maximize_coordinate(prob, region).x;
  return bsm::maximize_coordinate(prob, region, opts.tau_rel).x;
}

// One Gauss-Seidel sweep inside a fixed surrogate: each coordinate sees
// the already-updated positions of the others.
double sweep_gauss_seidel(const SurrogateModel& model, PinchLayout& x,
                          const ScenarioConfig& cfg, const SolveOptions& opts) {
  double inner_s = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    const std::vector<double> others = other_coordinates(x, p);
    const IntervalSet region = feasible_region(others, cfg);
    if (region.empty())
      throw NoFeasiblePosition("mm: empty region from a feasible layout (bug)");
    const CoordinateProblem prob = coordinate_problem(model, x, p);
    const auto t0 = Clock::now();
    x.xs[p] = solve_coordinate(prob, region, opts);
    inner_s += seconds_since(t0);
  }
  return inner_s;
}

// Jacobi sweep: all coordinates are updated against the anchor. The
// combined move can break spacing or the ascent guarantee, in which case
// the iteration falls back to a Gauss-Seidel sweep.
double sweep_jacobi(const SurrogateModel& model, PinchLayout& x,
                    const ScenarioConfig& cfg, const SolveOptions& opts,
                    double current_objective) {
  const PinchLayout anchor = x;
  PinchLayout candidate = x;
  double inner_s = 0.0;
  for (std::size_t p = 0; p < anchor.size(); ++p) {
    const std::vector<double> others = other_coordinates(anchor, p);
    const IntervalSet region = feasible_region(others, cfg);
    if (region.empty())
      throw NoFeasiblePosition("mm: empty region from a feasible layout (bug)");
    const CoordinateProblem prob = coordinate_problem(model, anchor, p);
    const auto t0 = Clock::now();
    candidate.xs[p] = solve_coordinate(prob, region, opts);
    inner_s += seconds_since(t0);
  }
  const double slack = 1e-12 * std::max(1.0, std::abs(current_objective));
  if (is_feasible(candidate, cfg) &&
      average_snr(candidate, cfg).min_value >= current_objective - slack) {
    x = candidate;
    return inner_s;
  }
  return inner_s + sweep_gauss_seidel(model, x, cfg, opts);
}

}  // namespace

void SolveOptions::validate() const {
  if (max_iters < 1) throw std::invalid_argument("solve options: max_iters >= 1");
  if (!(conv_tol > 0.0)) throw std::invalid_argument("solve options: conv_tol > 0");
  if (n_starts < 1) throw std::invalid_argument("solve options: n_starts >= 1");
  if (!(tau_rel > 0.0)) throw std::invalid_argument("solve options: tau_rel > 0");
}

PinchLayout random_feasible_layout(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::size_t count = cfg.num_pinch;
  const double slack =
      (cfg.d2 - cfg.d1) - static_cast<double>(count - 1) * cfg.delta;
  std::vector<double> offsets(count);
  for (double& v : offsets) v = rng.uniform() * slack;
  std::sort(offsets.begin(), offsets.end());
  PinchLayout out;
  out.xs.resize(count);
  for (std::size_t p = 0; p < count; ++p)
    out.xs[p] = cfg.d1 + offsets[p] + static_cast<double>(p) * cfg.delta;
  return out;
}

StartReport run_single(const PinchLayout& start, const ScenarioConfig& cfg,
                       const SolveOptions& opts) {
  cfg.validate();
  opts.validate();
  require_feasible(start, cfg);

  StartReport rep;
  PinchLayout x = start;
  rep.trajectory.push_back(average_snr(x, cfg).min_value);

  for (int n = 0; n < opts.max_iters; ++n) {
    const auto iter_t0 = Clock::now();
    const SurrogateModel model = build_surrogate(x, cfg);
    const double surrogate_s = seconds_since(iter_t0);

    const double prev = rep.trajectory.back();
    const double inner_s =
        opts.sweep == SweepOrder::kGaussSeidel
            ? sweep_gauss_seidel(model, x, cfg, opts)
            : sweep_jacobi(model, x, cfg, opts, prev);

    const double objective = average_snr(x, cfg).min_value;
    rep.trajectory.push_back(objective);
    rep.iter_time_s.push_back(seconds_since(iter_t0));
    rep.inner_time_s.push_back(inner_s);
    rep.surrogate_time_s.push_back(surrogate_s);
    if (std::abs(objective - prev) < opts.conv_tol * std::abs(prev)) break;
  }

  rep.iterations = static_cast<int>(rep.trajectory.size()) - 1;
  rep.layout = std::move(x);
  return rep;
}

SolveReport solve(const ScenarioConfig& cfg, const SolveOptions& opts) {
  cfg.validate();
  opts.validate();

  std::vector<PinchLayout> starts;
  starts.reserve(static_cast<std::size_t>(opts.n_starts));
  try {
    PinchLayout baseline = cas_layout(cfg);
    if (is_feasible(baseline, cfg)) starts.push_back(std::move(baseline));
  } catch (const std::invalid_argument&) {
    // baseline does not fit; all starts are random
  }
  for (std::uint64_t i = 0; starts.size() < static_cast<std::size_t>(opts.n_starts); ++i) {
    Rng rng = Rng::substream(opts.seed, i);
    starts.push_back(random_feasible_layout(cfg, rng));
  }

  SolveReport report;
  report.inner_used = opts.inner;
  report.starts.reserve(starts.size());
  for (const PinchLayout& s : starts)
    report.starts.push_back(run_single(s, cfg, opts));

  report.best_start = 0;
  report.best_objective = report.starts.front().trajectory.back();
  for (std::size_t i = 1; i < report.starts.size(); ++i) {
    const double value = report.starts[i].trajectory.back();
    if (value > report.best_objective) {
      report.best_objective = value;
      report.best_start = i;
    }
  }
  report.best_layout = report.starts[report.best_start].layout;
  return report;
}

}  // namespace pinchopt
