// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/experiment.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "pinchopt/scenario_io.hpp"

using namespace pinchopt;

namespace {

// strips the wall_time_s column (index 7) so byte-stability can be
// asserted on everything that is not a timing
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::size_t col = 0, start = 0;
    std::string kept;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      if (col != 7) {
        if (!kept.empty()) kept += ',';
        kept += line.substr(start, comma - start);
      }
      start = comma + 1;
      ++col;
    }
    out += kept + '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("scenario generation") {
  ScenarioGenSpec spec;
  spec.num_users = 6;
  spec.seed = 123;
  const ScenarioConfig cfg = generate_scenario(spec);

  SUBCASE("defaults follow the reference setup") {
    CHECK(cfg.fc == 28e9);
    CHECK(cfg.t == 3.0);
    CHECK(cfg.d1 == -10.0);
    CHECK(cfg.d2 == 10.0);
    CHECK(cfg.num_pinch == 5);
    CHECK(cfg.sigma2 == doctest::Approx(1e-12).epsilon(1e-12));
    CHECK(cfg.ptx == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(cfg.delta == doctest::Approx(0.00535343675).epsilon(1e-9));
    CHECK(*cfg.service_center_x == 0.0);
  }
  SUBCASE("users fall inside the rectangle") {
    REQUIRE(cfg.users.size() == 6);
    for (const UserPosition& u : cfg.users) {
      CHECK(u.x >= -20.0);
      CHECK(u.x <= 20.0);
      CHECK(u.y >= -5.0);
      CHECK(u.y <= 5.0);
    }
  }
  SUBCASE("same seed reproduces the users") {
    const ScenarioConfig again = generate_scenario(spec);
    REQUIRE(again.users.size() == cfg.users.size());
    for (std::size_t u = 0; u < cfg.users.size(); ++u) {
      CHECK(again.users[u].x == cfg.users[u].x);
      CHECK(again.users[u].y == cfg.users[u].y);
    }
  }
  SUBCASE("bad extents rejected") {
    ScenarioGenSpec bad = spec;
    bad.rect_width = 0.0;
    CHECK_THROWS_AS(generate_scenario(bad), std::invalid_argument);
  }
}

TEST_CASE("scenario file round trip") {
  ScenarioGenSpec spec;
  spec.num_users = 4;
  spec.seed = 9;
  const ScenarioConfig cfg = generate_scenario(spec);

  std::ostringstream out;
  write_scenario(out, cfg);
  std::istringstream in(out.str());
  const ScenarioConfig back = parse_scenario(in);

  CHECK(back.d1 == cfg.d1);
  CHECK(back.d2 == cfg.d2);
  CHECK(back.delta == cfg.delta);
  CHECK(back.t == cfg.t);
  CHECK(back.fc == cfg.fc);
  CHECK(back.alpha == cfg.alpha);
  CHECK(back.n_eff == cfg.n_eff);
  CHECK(back.feed_x == cfg.feed_x);
  CHECK(back.num_pinch == cfg.num_pinch);
  REQUIRE(back.service_center_x.has_value());
  CHECK(*back.service_center_x == *cfg.service_center_x);
  // powers pass through a dBm round trip
  CHECK(back.ptx == doctest::Approx(cfg.ptx).epsilon(1e-12));
  CHECK(back.sigma2 == doctest::Approx(cfg.sigma2).epsilon(1e-12));
  REQUIRE(back.users.size() == cfg.users.size());
  for (std::size_t u = 0; u < cfg.users.size(); ++u) {
    CHECK(back.users[u].x == cfg.users[u].x);
    CHECK(back.users[u].y == cfg.users[u].y);
  }
}

TEST_CASE("scenario parser errors") {
  auto expect_throw = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_scenario(in), std::runtime_error);
  };
  expect_throw("bogus_key = 1\nuser = 0,0\nnum_pinch = 1\n");
  expect_throw("d1 = -10\nd2 = ten\n");
  expect_throw("user = 5\n");
  expect_throw("d1 -10\n");

  // comments and blank lines are fine
  std::istringstream ok(
      "# header\n\n  d1 = -10\nd2 = 10  # trailing comment\ndelta = 0.5\n"
      "t = 3\nfc = 28e9\nptx_dbm = 40\nsigma2_dbm = -90\nalpha = 0.01\n"
      "num_pinch = 2\nuser = 1.5,-2\nuser = -3,0.5\n");
  const ScenarioConfig cfg = parse_scenario(ok);
  CHECK(cfg.num_pinch == 2);
  CHECK(cfg.users.size() == 2);
  CHECK(cfg.users[1].y == 0.5);
}

TEST_CASE("experiment sweeps") {
  ExperimentPlan plan;
  plan.gen.num_users = 3;
  plan.base.num_pinch = 3;
  plan.trials = 2;
  plan.seed = 77;
  plan.solve.n_starts = 3;

  SUBCASE("transmit power sweep is strictly increasing per trial") {
    plan.axis = SweepAxis::kPtxDbm;
    plan.values = {30.0, 40.0, 50.0};
    plan.solver = SolverChoice::kCsm;
    const std::vector<ExperimentRow> rows = run_experiment(plan);
    REQUIRE(rows.size() == 6);
    for (int trial = 0; trial < plan.trials; ++trial) {
      double last = -1e300;
      for (const ExperimentRow& r : rows) {
        if (r.trial != trial) continue;
        CHECK(r.ok());
        CHECK(r.min_snr_db > last);
        last = r.min_snr_db;
      }
    }
  }

  SUBCASE("blockage sweep is monotone per trial") {
    plan.axis = SweepAxis::kAlpha;
    plan.values = {0.01, 0.1};
    plan.solver = SolverChoice::kCsm;
    plan.solve.n_starts = 8;
    const std::vector<ExperimentRow> rows = run_experiment(plan);
    REQUIRE(rows.size() == 4);
    for (int trial = 0; trial < plan.trials; ++trial) {
      double low_alpha = 0.0, high_alpha = 0.0;
      for (const ExperimentRow& r : rows) {
        if (r.trial != trial) continue;
        (r.sweep_value == 0.01 ? low_alpha : high_alpha) = r.min_snr_linear;
      }
      CHECK(low_alpha >= high_alpha);
    }
  }

  SUBCASE("paired solvers agree and never lose to the baseline") {
    plan.axis = SweepAxis::kPtxDbm;
    plan.values = {40.0};
    plan.solver = SolverChoice::kBoth;
    const std::vector<ExperimentRow> rows = run_experiment(plan);
    REQUIRE(rows.size() == 4);
    for (int trial = 0; trial < plan.trials; ++trial) {
      double csm_value = 0.0, bsm_value = 0.0;
      for (const ExperimentRow& r : rows) {
        if (r.trial != trial) continue;
        CHECK(r.min_snr_db >= r.cas_min_snr_db - 1e-9);
        CHECK(r.min_snr_db == doctest::Approx(10.0 * std::log10(r.min_snr_linear))
                                  .epsilon(1e-9));
        (r.solver == "csm" ? csm_value : bsm_value) = r.min_snr_linear;
      }
      CHECK(csm_value == doctest::Approx(bsm_value).epsilon(1e-6));
    }
  }

  SUBCASE("infeasible sweep points become error rows, the run continues") {
    plan.axis = SweepAxis::kPinch;
    plan.values = {2.0, 50000.0};  // 50k antennas cannot fit
    plan.solver = SolverChoice::kCsm;
    plan.trials = 1;
    const std::vector<ExperimentRow> rows = run_experiment(plan);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].ok());
    CHECK_FALSE(rows[1].ok());
    CHECK(std::isnan(rows[1].min_snr_linear));
  }

  SUBCASE("csv output is byte stable apart from timings") {
    plan.axis = SweepAxis::kAlpha;
    plan.values = {0.01};
    plan.solver = SolverChoice::kBoth;
    std::ostringstream a, b;
    write_experiment_csv(a, run_experiment(plan));
    write_experiment_csv(b, run_experiment(plan));
    CHECK(without_timing(a.str()) == without_timing(b.str()));
    const std::string header = a.str().substr(0, a.str().find('\n'));
    CHECK(header ==
          "sweep_value,trial,solver,min_snr_linear,min_snr_db,cas_min_snr_db,"
          "iterations,wall_time_s,seed,status");
  }
}

TEST_CASE("benchmark harness") {
  ExperimentPlan plan;
  plan.gen.num_users = 2;
  plan.base.num_pinch = 2;
  plan.axis = SweepAxis::kUsers;
  plan.values = {2.0, 4.0};
  plan.seed = 5;
  plan.solve.n_starts = 1;

  const std::vector<BenchmarkRow> rows = run_benchmark(plan, 10);
  REQUIRE(rows.size() == 2);
  for (const BenchmarkRow& r : rows) {
    CHECK(r.reps >= 10);
    CHECK(r.csm_median_inner_s > 0.0);
    CHECK(r.bsm_median_inner_s > 0.0);
    CHECK(r.csm_over_bsm ==
          doctest::Approx(r.csm_median_inner_s / r.bsm_median_inner_s));
  }
  CHECK(rows[0].num_users == 2);
  CHECK(rows[1].num_users == 4);

  std::ostringstream out;
  write_benchmark_csv(out, rows);
  CHECK(out.str().substr(0, out.str().find('\n')) ==
        "sweep_value,num_users,num_pinch,reps,csm_median_inner_s,"
        "bsm_median_inner_s,csm_over_bsm,seed");

  SUBCASE("wrong axis rejected") {
    plan.axis = SweepAxis::kAlpha;
    CHECK_THROWS_AS(run_benchmark(plan, 10), std::invalid_argument);
  }
}
