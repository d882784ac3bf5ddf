// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: scenario generation, single solves, sweep and
// benchmark CSV emission, and a self-check battery wired to the oracles.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pinchopt/experiment.hpp"
#include "pinchopt/intervals.hpp"
#include "pinchopt/mm_driver.hpp"
#include "pinchopt/oracle.hpp"
#include "pinchopt/scenario_io.hpp"
#include "pinchopt/solver_bsm.hpp"
#include "pinchopt/solver_csm.hpp"
#include "pinchopt/surrogate.hpp"

namespace {

using namespace pinchopt;

struct GenFlags {
  ScenarioGenSpec gen;
  ScenarioDefaults base;
  std::string scenario_file;
};

void add_base_flags(CLI::App* cmd, GenFlags& f) {
  cmd->add_option("--scenario", f.scenario_file, "scenario file (overrides generation)");
  cmd->add_option("--users", f.gen.num_users, "number of users to draw");
  cmd->add_option("--rect-width", f.gen.rect_width, "service area y-extent, m");
  cmd->add_option("--rect-length", f.gen.rect_length, "service area x-extent, m");
  cmd->add_option("--pinch", f.base.num_pinch, "number of pinching antennas");
  cmd->add_option("--alpha", f.base.alpha, "LoS blockage parameter, 1/m^2");
  cmd->add_option("--ptx-dbm", f.base.ptx_dbm, "total transmit power, dBm");
  cmd->add_option("--sigma2-dbm", f.base.sigma2_dbm, "noise power, dBm");
  cmd->add_option("--fc", f.base.fc, "carrier frequency, Hz");
  cmd->add_option("--t", f.base.t, "waveguide height, m");
  cmd->add_option("--d1", f.base.d1, "waveguide left endpoint, m");
  cmd->add_option("--d2", f.base.d2, "waveguide right endpoint, m");
  cmd->add_option("--delta", f.base.delta, "min antenna spacing, m (default lambda/2)");
}

ScenarioConfig make_scenario(const GenFlags& f, std::uint64_t seed) {
  if (!f.scenario_file.empty()) return read_scenario_file(f.scenario_file);
  ScenarioGenSpec gen = f.gen;
  gen.seed = seed;
  return generate_scenario(gen, f.base);
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "ptx") return SweepAxis::kPtxDbm;
  if (name == "alpha") return SweepAxis::kAlpha;
  if (name == "users") return SweepAxis::kUsers;
  if (name == "pinch") return SweepAxis::kPinch;
  throw CLI::ValidationError("--axis must be one of ptx|alpha|users|pinch");
}

SolverChoice parse_solver(const std::string& name) {
  if (name == "csm") return SolverChoice::kCsm;
  if (name == "bsm") return SolverChoice::kBsm;
  if (name == "both") return SolverChoice::kBoth;
  throw CLI::ValidationError("--solver must be one of csm|bsm|both");
}

void print_solve_report(const ScenarioConfig& cfg, const SolveReport& report) {
  const StartReport& best = report.starts[report.best_start];
  std::printf("solver            : %s\n",
              report.inner_used == InnerSolver::kCsm ? "csm" : "bsm");
  std::printf("starts            : %zu\n", report.starts.size());
  std::printf("best start        : %zu (%d iterations)\n", report.best_start,
              best.iterations);
  std::printf("min SNR           : %.6g linear = %.4f dB\n", report.best_objective,
              10.0 * std::log10(report.best_objective));
  try {
    const double cas = average_snr(cas_layout(cfg), cfg).min_value;
    std::printf("baseline min SNR  : %.6g linear = %.4f dB\n", cas,
                10.0 * std::log10(cas));
  } catch (const std::invalid_argument&) {
    std::printf("baseline min SNR  : not feasible on this waveguide\n");
  }
  std::printf("positions (m)     :");
  for (double x : report.best_layout.xs) std::printf(" %.6f", x);
  std::printf("\n");
  const SnrEvaluation snr = average_snr(report.best_layout, cfg);
  std::printf("per-user SNR (dB) :");
  for (double v : snr.per_user) std::printf(" %.4f", 10.0 * std::log10(v));
  std::printf("\n");
}

// Verification battery: every closed-form path is checked against an
// independent route on a concrete scenario.
int run_oracle_battery(const ScenarioConfig& cfg, std::uint64_t seed,
                       std::size_t mc_samples) {
  int failures = 0;
  auto report = [&](bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
  };

  Rng rng(seed);
  const PinchLayout anchor = random_feasible_layout(cfg, rng);
  const SurrogateModel model = build_surrogate(anchor, cfg);
  const SnrEvaluation at_anchor = average_snr(anchor, cfg);

  {  // minorization and tangency
    bool bounded = true;
    for (int i = 0; i < 2000 && bounded; ++i) {
      PinchLayout x;
      x.xs.resize(cfg.num_pinch);
      for (double& v : x.xs) v = rng.uniform(cfg.d1, cfg.d2);
      const std::vector<double> lb = lower_bound(model, x);
      const SnrEvaluation snr = average_snr(x, cfg);
      for (std::size_t u = 0; u < lb.size(); ++u)
        bounded = bounded && lb[u] <= snr.per_user[u] + 1e-12;
    }
    report(bounded, "surrogate stays below the true objective (2000 layouts)");

    bool tangent = true;
    const std::vector<double> lb = lower_bound(model, anchor);
    for (std::size_t u = 0; u < lb.size(); ++u)
      tangent = tangent && std::abs(lb[u] - at_anchor.per_user[u]) <=
                               1e-10 * std::abs(at_anchor.per_user[u]);
    report(tangent, "surrogate is tangent at the anchor");
  }

  {  // first-order match via central differences
    bool match = true;
    for (std::size_t u = 0; u < cfg.users.size(); ++u) {
      const auto fd = oracle::finite_diff_gradient(
          [&](const PinchLayout& l) { return average_snr(l, cfg).per_user[u]; },
          anchor, 1e-6);
      double err2 = 0.0, norm2 = 0.0;
      for (std::size_t p = 0; p < cfg.num_pinch; ++p) {
        const double analytic = 2.0 * model.rho_prime * model.coeff_at(u, p) *
                                (anchor.xs[p] - model.user_x[u]);
        err2 += (fd[p] - analytic) * (fd[p] - analytic);
        norm2 += analytic * analytic;
      }
      match = match && std::sqrt(err2) <= 1e-5 * std::max(std::sqrt(norm2), 1e-30);
    }
    report(match, "surrogate gradient matches the objective at the anchor");
  }

  {  // inner solvers vs brute force, per coordinate
    bool exact = true, agree = true;
    for (std::size_t p = 0; p < cfg.num_pinch; ++p) {
      std::vector<double> others;
      for (std::size_t q = 0; q < cfg.num_pinch; ++q)
        if (q != p) others.push_back(anchor.xs[q]);
      const IntervalSet region = feasible_region(others, cfg);
      const CoordinateProblem prob = coordinate_problem(model, anchor, p);
      const CoordinateOptimum exact_opt = csm::maximize_coordinate(prob, region);
      const CoordinateOptimum grid =
          oracle::grid_search_coordinate(prob, region, 1e-4);
      exact = exact &&
              exact_opt.value >= grid.value - 1e-6 * std::abs(grid.value);
      const bsm::BisectionResult bi = bsm::maximize_coordinate(prob, region);
      agree = agree && std::abs(bi.level - exact_opt.value) <=
                           std::max(10.0 * bi.tol_abs,
                                    1e-8 * std::abs(exact_opt.value));
    }
    report(exact, "candidate search beats the 1e-4 grid on every coordinate");
    report(agree, "bisection agrees with candidate search on every coordinate");
  }

  {  // Monte Carlo vs closed form
    Rng mc_rng = Rng::substream(seed, 77);
    const auto est =
        oracle::monte_carlo_received_power(anchor, cfg, mc_samples, mc_rng);
    bool within = true;
    for (std::size_t u = 0; u < est.mean.size(); ++u)
      within = within && std::abs(est.mean[u] - at_anchor.per_user[u]) <=
                             3.0 * est.std_error[u] + 1e-12;
    report(within, "Monte Carlo SNR matches the closed form within 3 sigma");
  }

  {  // monotone ascent on a couple of solves
    bool ascent = true;
    for (InnerSolver inner : {InnerSolver::kCsm, InnerSolver::kBsm}) {
      SolveOptions opts;
      opts.inner = inner;
      opts.n_starts = 2;
      opts.seed = seed + 13;
      const SolveReport rep = solve(cfg, opts);
      for (const StartReport& s : rep.starts) {
        for (std::size_t i = 0; i + 1 < s.trajectory.size(); ++i)
          ascent = ascent &&
                   s.trajectory[i + 1] >=
                       s.trajectory[i] - 1e-9 * std::abs(s.trajectory[i]);
      }
    }
    report(ascent, "objective never decreases across iterations");
  }

  return failures;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma - pos);
    out.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-min pinching-antenna placement along a waveguide"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "emit a random scenario file");
  GenFlags gen_flags;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  add_base_flags(gen_cmd, gen_flags);
  gen_cmd->add_option("--seed", gen_seed, "user-draw seed")->required();
  gen_cmd->add_option("-o,--output", gen_out, "output path (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "optimize one scenario");
  GenFlags solve_flags;
  std::uint64_t solve_seed = 1;
  std::string solve_solver = "csm";
  SolveOptions solve_opts;
  bool jacobi = false;
  add_base_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--seed", solve_seed, "seed for user draw and starts");
  solve_cmd->add_option("--solver", solve_solver, "csm|bsm");
  solve_cmd->add_option("--starts", solve_opts.n_starts, "number of starts");
  solve_cmd->add_option("--max-iters", solve_opts.max_iters, "iteration cap");
  solve_cmd->add_option("--conv-tol", solve_opts.conv_tol, "relative stop tolerance");
  solve_cmd->add_flag("--jacobi", jacobi, "update all coordinates against the anchor");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one axis, CSV out");
  GenFlags sweep_flags;
  std::string sweep_axis = "ptx", sweep_values, sweep_solver = "both", sweep_out;
  ExperimentPlan sweep_plan;
  bool strict = false;
  add_base_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--axis", sweep_axis, "ptx|alpha|users|pinch")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated sweep values")
      ->required();
  sweep_cmd->add_option("--trials", sweep_plan.trials, "fresh user draws per value");
  sweep_cmd->add_option("--seed", sweep_plan.seed, "master seed")->required();
  sweep_cmd->add_option("--solver", sweep_solver, "csm|bsm|both");
  sweep_cmd->add_option("--starts", sweep_plan.solve.n_starts, "starts per solve");
  sweep_cmd->add_option("-o,--output", sweep_out, "CSV path (default stdout)");
  sweep_cmd->add_flag("--strict", strict, "exit nonzero when any row errored");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "time csm vs bsm, CSV out");
  GenFlags bench_flags;
  std::string bench_axis = "users", bench_values, bench_out;
  ExperimentPlan bench_plan;
  int bench_reps = 10;
  add_base_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--axis", bench_axis, "users|pinch")->required();
  bench_cmd->add_option("--values", bench_values, "comma-separated sweep values")
      ->required();
  bench_cmd->add_option("--reps", bench_reps, "repetitions per value (>= 10)");
  bench_cmd->add_option("--seed", bench_plan.seed, "master seed")->required();
  bench_cmd->add_option("--starts", bench_plan.solve.n_starts, "starts per solve");
  bench_cmd->add_option("-o,--output", bench_out, "CSV path (default stdout)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "run the verification battery");
  GenFlags oracle_flags;
  std::uint64_t oracle_seed = 1;
  std::size_t oracle_samples = 100000;
  add_base_flags(oracle_cmd, oracle_flags);
  oracle_cmd->add_option("--seed", oracle_seed, "seed");
  oracle_cmd->add_option("--samples", oracle_samples, "Monte Carlo sample count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      GenFlags f = gen_flags;
      f.scenario_file.clear();  // gen always generates
      const ScenarioConfig cfg = make_scenario(f, gen_seed);
      if (gen_out.empty()) {
        write_scenario(std::cout, cfg);
      } else {
        write_scenario_file(gen_out, cfg);
        std::printf("wrote %s\n", gen_out.c_str());
      }
    } else if (*solve_cmd) {
      const ScenarioConfig cfg = make_scenario(solve_flags, solve_seed);
      solve_opts.inner =
          parse_solver(solve_solver) == SolverChoice::kBsm ? InnerSolver::kBsm
                                                           : InnerSolver::kCsm;
      solve_opts.seed = solve_seed;
      solve_opts.sweep = jacobi ? SweepOrder::kJacobi : SweepOrder::kGaussSeidel;
      print_solve_report(cfg, solve(cfg, solve_opts));
    } else if (*sweep_cmd) {
      sweep_plan.base = sweep_flags.base;
      sweep_plan.gen = sweep_flags.gen;
      sweep_plan.axis = parse_axis(sweep_axis);
      sweep_plan.values = parse_values(sweep_values);
      sweep_plan.solver = parse_solver(sweep_solver);
      const std::vector<ExperimentRow> rows = run_experiment(sweep_plan);
      if (sweep_out.empty()) {
        write_experiment_csv(std::cout, rows);
      } else {
        std::ofstream out(sweep_out);
        if (!out) throw std::runtime_error("cannot write " + sweep_out);
        write_experiment_csv(out, rows);
        std::printf("wrote %zu rows to %s\n", rows.size(), sweep_out.c_str());
      }
      if (strict) {
        for (const ExperimentRow& r : rows) {
          if (!r.ok()) {
            std::fprintf(stderr, "row error: %s\n", r.status.c_str());
            return 2;
          }
        }
      }
    } else if (*bench_cmd) {
      bench_plan.base = bench_flags.base;
      bench_plan.gen = bench_flags.gen;
      bench_plan.axis = parse_axis(bench_axis);
      if (bench_plan.axis != SweepAxis::kUsers && bench_plan.axis != SweepAxis::kPinch)
        throw CLI::ValidationError("bench --axis must be users|pinch");
      bench_plan.values = parse_values(bench_values);
      const std::vector<BenchmarkRow> rows = run_benchmark(bench_plan, bench_reps);
      if (bench_out.empty()) {
        write_benchmark_csv(std::cout, rows);
      } else {
        std::ofstream out(bench_out);
        if (!out) throw std::runtime_error("cannot write " + bench_out);
        write_benchmark_csv(out, rows);
        std::printf("wrote %zu rows to %s\n", rows.size(), bench_out.c_str());
      }
    } else if (*oracle_cmd) {
      const ScenarioConfig cfg = make_scenario(oracle_flags, oracle_seed);
      const int failures = run_oracle_battery(cfg, oracle_seed, oracle_samples);
      if (failures > 0) {
        std::fprintf(stderr, "%d check(s) failed\n", failures);
        return 1;
      }
      std::printf("all checks passed\n");
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
