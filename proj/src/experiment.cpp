// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pinchopt {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

ScenarioConfig base_config(const ScenarioDefaults& d) {
  ScenarioConfig cfg;
  cfg.d1 = d.d1;
  cfg.d2 = d.d2;
  cfg.t = d.t;
  cfg.fc = d.fc;
  cfg.ptx = dbm_to_watt(d.ptx_dbm);
  cfg.sigma2 = dbm_to_watt(d.sigma2_dbm);
  cfg.alpha = d.alpha;
  cfg.n_eff = d.n_eff;
  cfg.num_pinch = d.num_pinch;
  cfg.delta = d.delta > 0.0 ? d.delta : 0.5 * cfg.wavelength();
  cfg.feed_x = d.d1;
  cfg.service_center_x = 0.5 * (d.d1 + d.d2);
  return cfg;
}

const char* solver_name(InnerSolver s) {
  return s == InnerSolver::kCsm ? "csm" : "bsm";
}

std::vector<InnerSolver> solvers_of(SolverChoice choice) {
  switch (choice) {
    case SolverChoice::kCsm: return {InnerSolver::kCsm};
    case SolverChoice::kBsm: return {InnerSolver::kBsm};
    default: return {InnerSolver::kCsm, InnerSolver::kBsm};
  }
}

// Sweep values apply on top of the defaults; users are drawn afterwards.
ScenarioDefaults apply_axis(ScenarioDefaults d, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kPtxDbm: d.ptx_dbm = value; break;
    case SweepAxis::kAlpha: d.alpha = value; break;
    case SweepAxis::kPinch: d.num_pinch = static_cast<std::size_t>(value); break;
    case SweepAxis::kUsers: break;  // handled through the generator spec
  }
  return d;
}

}  // namespace

ScenarioConfig generate_scenario(const ScenarioGenSpec& spec,
                                 const ScenarioDefaults& defaults) {
  if (!(spec.rect_width > 0.0) || !(spec.rect_length > 0.0))
    throw std::invalid_argument("generate_scenario: rectangle extents must be positive");
  if (spec.num_users < 1)
    throw std::invalid_argument("generate_scenario: num_users >= 1");

  ScenarioConfig cfg = base_config(defaults);
  const double cx = *cfg.service_center_x;
  Rng rng(spec.seed);
  cfg.users.reserve(spec.num_users);
  for (std::size_t u = 0; u < spec.num_users; ++u) {
    const double x = rng.uniform(cx - 0.5 * spec.rect_length, cx + 0.5 * spec.rect_length);
    const double y = rng.uniform(-0.5 * spec.rect_width, 0.5 * spec.rect_width);
    cfg.users.push_back(UserPosition{x, y});
  }
  cfg.validate();
  return cfg;
}

void ExperimentPlan::validate() const {
  if (values.empty())
    throw std::invalid_argument("experiment plan: sweep values must be nonempty");
  if (trials < 1) throw std::invalid_argument("experiment plan: trials >= 1");
  solve.validate();
}

std::vector<ExperimentRow> run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<ExperimentRow> rows;
  rows.reserve(plan.values.size() * static_cast<std::size_t>(plan.trials) * 2);

  for (double value : plan.values) {
    for (int trial = 0; trial < plan.trials; ++trial) {
      // user draw and solver starts depend on the trial only, so rows are
      // comparable across sweep values
      ScenarioGenSpec gen = plan.gen;
      gen.seed = Rng::substream(plan.seed, static_cast<std::uint64_t>(trial)).next_u64();
      if (plan.axis == SweepAxis::kUsers)
        gen.num_users = static_cast<std::size_t>(value);

      for (InnerSolver inner : solvers_of(plan.solver)) {
        ExperimentRow row;
        row.sweep_value = value;
        row.trial = trial;
        row.solver = solver_name(inner);
        row.seed = plan.seed;
        try {
          const ScenarioConfig cfg =
              generate_scenario(gen, apply_axis(plan.base, plan.axis, value));
          SolveOptions opts = plan.solve;
          opts.inner = inner;
          opts.seed = Rng::substream(plan.seed, 1000003 + static_cast<std::uint64_t>(trial))
                          .next_u64();
          const auto t0 = Clock::now();
          const SolveReport report = solve(cfg, opts);
          row.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
          row.min_snr_linear = report.best_objective;
          row.min_snr_db = 10.0 * std::log10(report.best_objective);
          row.iterations = report.starts[report.best_start].iterations;
          try {
            row.cas_min_snr_db =
                10.0 * std::log10(average_snr(cas_layout(cfg), cfg).min_value);
          } catch (const std::invalid_argument&) {
            row.cas_min_snr_db = std::nan("");
          }
        } catch (const std::exception& e) {
          row.min_snr_linear = std::nan("");
          row.min_snr_db = std::nan("");
          row.cas_min_snr_db = std::nan("");
          row.status = std::string("error: ") + e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "sweep_value,trial,solver,min_snr_linear,min_snr_db,cas_min_snr_db,"
         "iterations,wall_time_s,seed,status\n";
  for (const ExperimentRow& r : rows) {
    out << fmt(r.sweep_value) << ',' << r.trial << ',' << r.solver << ','
        << fmt(r.min_snr_linear) << ',' << fmt(r.min_snr_db) << ','
        << fmt(r.cas_min_snr_db) << ',' << r.iterations << ','
        << fmt(r.wall_time_s) << ',' << r.seed << ',' << r.status << '\n';
  }
}

std::vector<BenchmarkRow> run_benchmark(const ExperimentPlan& plan, int reps) {
  plan.validate();
  if (plan.axis != SweepAxis::kUsers && plan.axis != SweepAxis::kPinch)
    throw std::invalid_argument("benchmark: sweep axis must be users or pinch");
  reps = std::max(reps, 10);

  std::vector<BenchmarkRow> rows;
  rows.reserve(plan.values.size());
  for (std::size_t vi = 0; vi < plan.values.size(); ++vi) {
    const double value = plan.values[vi];
    ScenarioGenSpec gen = plan.gen;
    gen.seed = Rng::substream(plan.seed, vi).next_u64();
    if (plan.axis == SweepAxis::kUsers)
      gen.num_users = static_cast<std::size_t>(value);
    const ScenarioConfig cfg =
        generate_scenario(gen, apply_axis(plan.base, plan.axis, value));

    SolveOptions opts = plan.solve;
    opts.seed = Rng::substream(plan.seed, 5000011 + vi).next_u64();

    std::vector<double> csm_times, bsm_times;
    for (int rep = 0; rep < reps; ++rep) {
      for (InnerSolver inner : {InnerSolver::kCsm, InnerSolver::kBsm}) {
        opts.inner = inner;  // identical instance and starts for both solvers
        const SolveReport report = solve(cfg, opts);
        auto& sink = inner == InnerSolver::kCsm ? csm_times : bsm_times;
        for (const StartReport& start : report.starts)
          sink.insert(sink.end(), start.inner_time_s.begin(), start.inner_time_s.end());
      }
    }

    BenchmarkRow row;
    row.sweep_value = value;
    row.num_users = gen.num_users;
    row.num_pinch = plan.axis == SweepAxis::kPinch ? static_cast<std::size_t>(value)
                                                   : plan.base.num_pinch;
    row.reps = reps;
    row.csm_median_inner_s = median(csm_times);
    row.bsm_median_inner_s = median(bsm_times);
    row.csm_over_bsm = row.bsm_median_inner_s > 0.0
                           ? row.csm_median_inner_s / row.bsm_median_inner_s
                           : std::nan("");
    row.seed = plan.seed;
    rows.push_back(row);
  }
  return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << "sweep_value,num_users,num_pinch,reps,csm_median_inner_s,"
         "bsm_median_inner_s,csm_over_bsm,seed\n";
  for (const BenchmarkRow& r : rows) {
    out << fmt(r.sweep_value) << ',' << r.num_users << ',' << r.num_pinch << ','
        << r.reps << ',' << fmt(r.csm_median_inner_s) << ','
        << fmt(r.bsm_median_inner_s) << ',' << fmt(r.csm_over_bsm) << ','
        << r.seed << '\n';
  }
}

}  // namespace pinchopt
