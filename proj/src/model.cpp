// SPDX-License-Identifier: Apache-2.0
#include "pinchopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pinchopt {

namespace {

bool all_finite(const ScenarioConfig& cfg) {
  for (const UserPosition& u : cfg.users) {
    if (!std::isfinite(u.x) || !std::isfinite(u.y)) return false;
  }
  return std::isfinite(cfg.d1) && std::isfinite(cfg.d2) &&
         std::isfinite(cfg.delta) && std::isfinite(cfg.t) &&
         std::isfinite(cfg.fc) && std::isfinite(cfg.ptx) &&
         std::isfinite(cfg.sigma2) && std::isfinite(cfg.alpha);
}

}  // namespace

double ScenarioConfig::center_x() const {
  if (service_center_x) return *service_center_x;
  if (!users.empty()) {
    double lo = users.front().x, hi = users.front().x;
    for (const UserPosition& u : users) {
      lo = std::min(lo, u.x);
      hi = std::max(hi, u.x);
    }
    return 0.5 * (lo + hi);
  }
  return 0.5 * (d1 + d2);
}

void ScenarioConfig::validate() const {
  if (!all_finite(*this)) throw std::invalid_argument("scenario: non-finite value");
  if (!(d1 < d2)) throw std::invalid_argument("scenario: requires d1 < d2");
  if (!(delta > 0.0)) throw std::invalid_argument("scenario: requires delta > 0");
  if (num_pinch < 1) throw std::invalid_argument("scenario: requires num_pinch >= 1");
  if ((d2 - d1) < static_cast<double>(num_pinch - 1) * delta)
    throw std::invalid_argument(
        "scenario: waveguide too short for num_pinch antennas at spacing delta");
  if (!(t > 0.0)) throw std::invalid_argument("scenario: requires t > 0");
  if (!(fc > 0.0)) throw std::invalid_argument("scenario: requires fc > 0");
  if (!(ptx > 0.0)) throw std::invalid_argument("scenario: requires ptx > 0");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("scenario: requires sigma2 > 0");
  if (alpha < 0.0) throw std::invalid_argument("scenario: requires alpha >= 0");
  if (!(n_eff > 0.0)) throw std::invalid_argument("scenario: requires n_eff > 0");
  if (users.empty()) throw std::invalid_argument("scenario: requires at least one user");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) {
  if (!(watt > 0.0)) throw std::invalid_argument("watt_to_dbm: requires watt > 0");
  return 10.0 * std::log10(watt) + 30.0;
}

double pathloss_coefficient(double fc) {
  if (!(fc > 0.0)) throw std::invalid_argument("pathloss_coefficient: requires fc > 0");
  constexpr double pi = std::numbers::pi;
  return kSpeedOfLight * kSpeedOfLight / (16.0 * pi * pi * fc * fc);
}

double squared_distance(const UserPosition& user, double xp,
                        const ScenarioConfig& cfg) {
  const double dx = xp - user.x;
  return dx * dx + user.y * user.y + cfg.t * cfg.t;
}

double los_probability(const UserPosition& user, double xp,
                       const ScenarioConfig& cfg) {
  return std::exp(-cfg.alpha * squared_distance(user, xp, cfg));
}

double mean_gain(double z, const UserPosition& user, const ScenarioConfig& cfg) {
  const double q = squared_distance(user, z, cfg);
  return std::exp(-cfg.alpha * q) / q;
}

double snr_scale(const ScenarioConfig& cfg, std::size_t num_antennas) {
  if (num_antennas == 0)
    throw std::invalid_argument("snr_scale: requires at least one antenna");
  return pathloss_coefficient(cfg.fc) * cfg.ptx /
         (static_cast<double>(num_antennas) * cfg.sigma2);
}

SnrEvaluation average_snr(const PinchLayout& layout, const ScenarioConfig& cfg) {
  if (layout.xs.empty()) throw std::invalid_argument("average_snr: empty layout");
  const double scale = snr_scale(cfg, layout.size());
  SnrEvaluation out;
  out.per_user.reserve(cfg.users.size());
  for (const UserPosition& user : cfg.users) {
    double acc = 0.0;
    for (double xp : layout.xs) acc += mean_gain(xp, user, cfg);
    out.per_user.push_back(scale * acc);
  }
  out.argmin_user = 0;
  out.min_value = out.per_user.front();
  for (std::size_t u = 1; u < out.per_user.size(); ++u) {
    if (out.per_user[u] < out.min_value) {
      out.min_value = out.per_user[u];
      out.argmin_user = u;
    }
  }
  return out;
}

std::complex<double> complex_channel(const UserPosition& user, double xp,
                                     const ScenarioConfig& cfg) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double d = std::sqrt(squared_distance(user, xp, cfg));
  const double lambda = cfg.wavelength();
  const double lambda_g = lambda / cfg.n_eff;
  const double mag = std::sqrt(pathloss_coefficient(cfg.fc)) / d;
  const double phase =
      -two_pi / lambda * d - two_pi / lambda_g * std::abs(cfg.feed_x - xp);
  return std::polar(mag, phase);
}

PinchLayout cas_layout(const ScenarioConfig& cfg) {
  cfg.validate();
  const double half = 0.5 * cfg.wavelength();
  const double center = cfg.center_x();
  const double offset = 0.5 * static_cast<double>(cfg.num_pinch - 1);
  PinchLayout out;
  out.xs.resize(cfg.num_pinch);
  for (std::size_t p = 0; p < cfg.num_pinch; ++p)
    out.xs[p] = center + (static_cast<double>(p) - offset) * half;
  if (out.xs.front() < cfg.d1 || out.xs.back() > cfg.d2)
    throw std::invalid_argument("cas_layout: antenna span exceeds the waveguide");
  return out;
}

bool is_feasible(const PinchLayout& layout, const ScenarioConfig& cfg) {
  if (layout.xs.empty()) return false;
  for (double x : layout.xs) {
    if (!std::isfinite(x) || x < cfg.d1 || x > cfg.d2) return false;
  }
  for (std::size_t p = 0; p + 1 < layout.size(); ++p) {
    for (std::size_t q = p + 1; q < layout.size(); ++q) {
      if (std::abs(layout.xs[p] - layout.xs[q]) < cfg.delta - kSpacingTol)
        return false;
    }
  }
  return true;
}

void require_feasible(const PinchLayout& layout, const ScenarioConfig& cfg) {
  if (!is_feasible(layout, cfg))
    throw std::invalid_argument("layout violates range or spacing constraints");
}

}  // namespace pinchopt
