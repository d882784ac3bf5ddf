// SPDX-License-Identifier: Apache-2.0
//
// Concave quadratic minorizer of the per-user mean SNR, tangent at the
// current iterate. Each user's bound is separable across antenna
// coordinates; restricted to one coordinate it is a downward parabola
// with its vertex at the user's x-position.
#pragma once

#include <cstddef>
#include <vector>

#include "pinchopt/model.hpp"

namespace pinchopt {

/// Per-iteration minorizer coefficients anchored at one layout.
/// Per user u: L_u(x) = offset[u] + rho_prime * sum_p coeff[u][p] * (x_p - user_x[u])^2,
/// with L_u <= S_u everywhere and equality (plus matching gradient) at the anchor.
struct SurrogateModel {
  PinchLayout anchor;
  std::vector<double> coeff;   ///< num_users x num_pinch, row-major; all < 0
  std::vector<double> offset;  ///< per-user constant term
  std::vector<double> user_x;  ///< per-user parabola vertex
  double rho_prime = 0.0;
  std::size_t num_users = 0;
  std::size_t num_pinch = 0;

  double coeff_at(std::size_t u, std::size_t p) const {
    return coeff[u * num_pinch + p];
  }
};

/// Supporting-tangent slope of exp(-alpha q)/q in the squared-distance
/// variable, evaluated at q0 = (z0 - x_u)^2 + y_u^2 + t^2. Strictly
/// negative for every q0 > 0 and alpha >= 0.
double bound_coefficient(double z0, const UserPosition& user,
                         const ScenarioConfig& cfg);

/// Builds the minorizer anchored at a feasible layout.
SurrogateModel build_surrogate(const PinchLayout& anchor,
                               const ScenarioConfig& cfg);

/// Per-user bound values at a layout.
std::vector<double> lower_bound(const SurrogateModel& model,
                                const PinchLayout& layout);

/// Per-user constant term when coordinate p is left free: the bound with
/// the x_p contribution removed, all other coordinates at `current`.
std::vector<double> frozen_offsets(const SurrogateModel& model,
                                   const PinchLayout& current, std::size_t p);

/// h(x) = peak - curvature * (x - vertex)^2 with curvature > 0.
struct Parabola {
  double vertex = 0.0;
  double peak = 0.0;
  double curvature = 0.0;

  double value_at(double x) const {
    const double d = x - vertex;
    return peak - curvature * d * d;
  }
};

/// One coordinate of the surrogate problem: the lower envelope of a
/// downward parabola per user, to be maximized over a feasible region.
struct CoordinateProblem {
  std::vector<Parabola> parabolas;

  double envelope(double x) const;
};

struct CoordinateOptimum {
  double x = 0.0;
  double value = 0.0;
};

/// Restriction of the surrogate problem to coordinate p, with all other
/// coordinates held at `current`.
CoordinateProblem coordinate_problem(const SurrogateModel& model,
                                     const PinchLayout& current,
                                     std::size_t p);

}  // namespace pinchopt
