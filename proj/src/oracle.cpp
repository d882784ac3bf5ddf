// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace pinchopt::oracle {

CoordinateOptimum grid_search_coordinate(const CoordinateProblem& problem,
                                         const IntervalSet& region,
                                         double spacing) {
  if (!(spacing > 0.0))
    throw std::invalid_argument("grid_search_coordinate: spacing > 0");
  if (region.empty())
    throw NoFeasiblePosition("grid_search_coordinate: empty region");

  CoordinateOptimum best;
  bool have = false;
  auto consider = [&](double x) {
    const double v = problem.envelope(x);
    if (!have || v > best.value) {  // strict: ties keep the smallest x
      best = {x, v};
      have = true;
    }
  };
  for (const Interval& iv : region.items()) {
    const auto steps = static_cast<std::size_t>(iv.length() / spacing);
    for (std::size_t i = 0; i <= steps; ++i)
      consider(iv.lo + static_cast<double>(i) * spacing);
    consider(iv.hi);
  }
  return best;
}

GridSearchResult grid_search_full(const ScenarioConfig& cfg, double spacing) {
  cfg.validate();
  if (!(spacing > 0.0))
    throw std::invalid_argument("grid_search_full: spacing > 0");
  if (cfg.num_pinch > 2)
    throw std::invalid_argument("grid_search_full: guarded to num_pinch <= 2");

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>((cfg.d2 - cfg.d1) / spacing) + 2);
  for (std::size_t i = 0;; ++i) {
    const double x = cfg.d1 + static_cast<double>(i) * spacing;
    if (x >= cfg.d2) break;
    grid.push_back(x);
  }
  grid.push_back(cfg.d2);

  const std::size_t num_users = cfg.users.size();
  // per-user gain profile over the grid, so pair evaluation is table work
  std::vector<std::vector<double>> gain(num_users,
                                        std::vector<double>(grid.size()));
  for (std::size_t u = 0; u < num_users; ++u) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      gain[u][i] = mean_gain(grid[i], cfg.users[u], cfg);
  }

  GridSearchResult best;
  bool have = false;

  if (cfg.num_pinch == 1) {
    const double scale = snr_scale(cfg, 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double worst = gain[0][i];
      for (std::size_t u = 1; u < num_users; ++u) worst = std::min(worst, gain[u][i]);
      const double value = scale * worst;
      if (!have || value > best.value) {
        best = {PinchLayout{{grid[i]}}, value};
        have = true;
      }
    }
    return best;
  }

  const double scale = snr_scale(cfg, 2);
  const double min_gap = cfg.delta - 1e-12;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      if (grid[j] - grid[i] < min_gap) continue;
      double worst = gain[0][i] + gain[0][j];
      for (std::size_t u = 1; u < num_users; ++u)
        worst = std::min(worst, gain[u][i] + gain[u][j]);
      const double value = scale * worst;
      if (!have || value > best.value) {
        best = {PinchLayout{{grid[i], grid[j]}}, value};
        have = true;
      }
    }
  }
  if (!have) throw NoFeasiblePosition("grid_search_full: no feasible grid pair");
  return best;
}

MonteCarloEstimate monte_carlo_received_power(const PinchLayout& layout,
                                              const ScenarioConfig& cfg,
                                              std::size_t n_samples, Rng& rng) {
  cfg.validate();
  if (layout.xs.empty())
    throw std::invalid_argument("monte_carlo_received_power: empty layout");
  if (n_samples < 1)
    throw std::invalid_argument("monte_carlo_received_power: n_samples >= 1");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::size_t num_users = cfg.users.size();
  const std::size_t count = layout.size();
  const double power_scale =
      cfg.ptx / (static_cast<double>(count) * cfg.sigma2);

  struct Term {
    std::complex<double> h;
    double p_los;
  };
  std::vector<Term> terms(num_users * count);
  for (std::size_t u = 0; u < num_users; ++u) {
    for (std::size_t p = 0; p < count; ++p) {
      terms[u * count + p] = {complex_channel(cfg.users[u], layout.xs[p], cfg),
                              los_probability(cfg.users[u], layout.xs[p], cfg)};
    }
  }

  // Welford accumulation of the per-user sample mean and variance
  std::vector<double> mean(num_users, 0.0), m2(num_users, 0.0);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t u = 0; u < num_users; ++u) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t p = 0; p < count; ++p) {
        const Term& term = terms[u * count + p];
        if (!rng.bernoulli(term.p_los)) continue;
        acc += term.h * std::polar(1.0, rng.uniform(0.0, two_pi));
      }
      const double snr = power_scale * std::norm(acc);
      const double delta = snr - mean[u];
      mean[u] += delta / static_cast<double>(s + 1);
      m2[u] += delta * (snr - mean[u]);
    }
  }

  MonteCarloEstimate out;
  out.samples = n_samples;
  out.mean = std::move(mean);
  out.std_error.resize(num_users, 0.0);
  if (n_samples > 1) {
    for (std::size_t u = 0; u < num_users; ++u) {
      const double var = m2[u] / static_cast<double>(n_samples - 1);
      out.std_error[u] = std::sqrt(var / static_cast<double>(n_samples));
    }
  }
  return out;
}

std::vector<double> finite_diff_gradient(
    const std::function<double(const PinchLayout&)>& fn, const PinchLayout& at,
    double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_diff_gradient: step > 0");
  std::vector<double> grad(at.size());
  PinchLayout probe = at;
  for (std::size_t p = 0; p < at.size(); ++p) {
    probe.xs[p] = at.xs[p] + step;
    const double up = fn(probe);
    probe.xs[p] = at.xs[p] - step;
    const double down = fn(probe);
    probe.xs[p] = at.xs[p];
    grad[p] = (up - down) / (2.0 * step);
  }
  return grad;
}

}  // namespace pinchopt::oracle
