// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/surrogate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pinchopt {

namespace {

// Quadratic part of the bound for user u, summed in a fixed order so the
// tangency identity offset[u] + quad(anchor) == S_u(anchor) holds to
// roundoff.
double quad_sum(const SurrogateModel& m, const PinchLayout& layout,
                std::size_t u) {
  double acc = 0.0;
  for (std::size_t p = 0; p < m.num_pinch; ++p) {
    const double d = layout.xs[p] - m.user_x[u];
    acc += m.coeff_at(u, p) * d * d;
  }
  return m.rho_prime * acc;
}

}  // namespace

double bound_coefficient(double z0, const UserPosition& user,
                         const ScenarioConfig& cfg) {
  const double q0 = squared_distance(user, z0, cfg);
  if (!(q0 > 0.0))
    throw std::invalid_argument("bound_coefficient: requires positive squared distance");
  return -std::exp(-cfg.alpha * q0) * (cfg.alpha * q0 + 1.0) / (q0 * q0);
}

SurrogateModel build_surrogate(const PinchLayout& anchor,
                               const ScenarioConfig& cfg) {
  cfg.validate();
  require_feasible(anchor, cfg);

  SurrogateModel m;
  m.anchor = anchor;
  m.num_users = cfg.users.size();
  m.num_pinch = anchor.size();
  m.rho_prime = snr_scale(cfg, m.num_pinch);
  m.coeff.resize(m.num_users * m.num_pinch);
  m.offset.resize(m.num_users);
  m.user_x.resize(m.num_users);

  const SnrEvaluation snr = average_snr(anchor, cfg);
  for (std::size_t u = 0; u < m.num_users; ++u) {
    m.user_x[u] = cfg.users[u].x;
    for (std::size_t p = 0; p < m.num_pinch; ++p)
      m.coeff[u * m.num_pinch + p] =
          bound_coefficient(anchor.xs[p], cfg.users[u], cfg);
    m.offset[u] = snr.per_user[u] - quad_sum(m, anchor, u);
  }
  return m;
}

std::vector<double> lower_bound(const SurrogateModel& model,
                                const PinchLayout& layout) {
  if (layout.size() != model.num_pinch)
    throw std::invalid_argument("lower_bound: layout size mismatch");
  std::vector<double> out(model.num_users);
  for (std::size_t u = 0; u < model.num_users; ++u)
    out[u] = model.offset[u] + quad_sum(model, layout, u);
  return out;
}

std::vector<double> frozen_offsets(const SurrogateModel& model,
                                   const PinchLayout& current, std::size_t p) {
  if (current.size() != model.num_pinch)
    throw std::invalid_argument("frozen_offsets: layout size mismatch");
  if (p >= model.num_pinch)
    throw std::invalid_argument("frozen_offsets: coordinate index out of range");
  std::vector<double> out(model.num_users);
  for (std::size_t u = 0; u < model.num_users; ++u) {
    double acc = 0.0;
    for (std::size_t q = 0; q < model.num_pinch; ++q) {
      if (q == p) continue;
      const double d = current.xs[q] - model.user_x[u];
      acc += model.coeff_at(u, q) * d * d;
    }
    out[u] = model.offset[u] + model.rho_prime * acc;
  }
  return out;
}

double CoordinateProblem::envelope(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Parabola& pb : parabolas) best = std::min(best, pb.value_at(x));
  return best;
}

CoordinateProblem coordinate_problem(const SurrogateModel& model,
                                     const PinchLayout& current,
                                     std::size_t p) {
  const std::vector<double> peaks = frozen_offsets(model, current, p);
  CoordinateProblem prob;
  prob.parabolas.resize(model.num_users);
  for (std::size_t u = 0; u < model.num_users; ++u) {
    prob.parabolas[u] = Parabola{model.user_x[u], peaks[u],
                                 -model.rho_prime * model.coeff_at(u, p)};
  }
  return prob;
}

}  // namespace pinchopt
