// SPDX-License-Identifier: Apache-2.0
//
// Physical scenario description and the mean-SNR objective for a leaky
// waveguide carrying movable pinching antennas that multicast to ground
// users under probabilistic line-of-sight blockage.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pinchopt {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

/// Slack allowed on the minimum-spacing check of a layout (meters).
inline constexpr double kSpacingTol = 1e-9;

struct UserPosition {
  double x = 0.0;  ///< m, along the waveguide axis
  double y = 0.0;  ///< m, lateral offset from the axis (user height is 0)
};

/// Full problem description: waveguide geometry, RF constants, blockage
/// model and user positions. All powers are linear watts.
struct ScenarioConfig {
  double d1 = -10.0;      ///< waveguide left endpoint, m
  double d2 = 10.0;       ///< waveguide right endpoint, m
  double delta = 0.005;   ///< minimum antenna spacing, m
  double t = 3.0;         ///< waveguide height above the service area, m
  double fc = 28e9;       ///< carrier frequency, Hz
  double ptx = 10.0;      ///< total transmit power, W
  double sigma2 = 1e-12;  ///< noise power, W
  double alpha = 0.0;     ///< LoS blockage parameter, 1/m^2
  double n_eff = 1.4;     ///< waveguide effective refractive index
  double feed_x = 0.0;    ///< waveguide feed-point x, m
  /// x-coordinate of the service-area center. When unset the midpoint of
  /// the user x-range is used (see center_x).
  std::optional<double> service_center_x;
  std::vector<UserPosition> users;
  std::size_t num_pinch = 1;  ///< number of pinching antennas P

  double wavelength() const { return kSpeedOfLight / fc; }
  double center_x() const;

  /// Throws std::invalid_argument when any invariant is violated
  /// (endpoint order, positivity, spacing feasibility, empty users, ...).
  void validate() const;
};

/// Candidate solution: x-coordinates of the P antennas along the waveguide.
struct PinchLayout {
  std::vector<double> xs;
  std::size_t size() const { return xs.size(); }
};

struct SnrEvaluation {
  std::vector<double> per_user;  ///< linear-scale average SNR per user
  double min_value = 0.0;
  std::size_t argmin_user = 0;
};

/// Raised when a per-coordinate solver is handed an empty feasible region.
struct NoFeasiblePosition final : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Free-space path loss coefficient c^2 / (16 pi^2 fc^2).
double pathloss_coefficient(double fc);

/// Squared 3-D distance between user (x,y,0) and an antenna at (xp,0,t).
double squared_distance(const UserPosition& user, double xp,
                        const ScenarioConfig& cfg);

/// Probability of a line-of-sight link, exp(-alpha * distance^2).
double los_probability(const UserPosition& user, double xp,
                       const ScenarioConfig& cfg);

/// Blockage-weighted inverse-square gain profile along the waveguide:
/// exp(-alpha*q)/q with q = (z - x_u)^2 + y_u^2 + t^2. The mean channel
/// gain of an antenna at z is pathloss_coefficient * mean_gain.
double mean_gain(double z, const UserPosition& user, const ScenarioConfig& cfg);

/// Composite SNR scale eta * ptx / (P * sigma2) multiplying the summed
/// gain profile.
double snr_scale(const ScenarioConfig& cfg, std::size_t num_antennas);

/// Per-user mean SNR of a layout plus its minimum and argmin.
SnrEvaluation average_snr(const PinchLayout& layout, const ScenarioConfig& cfg);

/// Complex baseband channel between one antenna and one user, including
/// the in-waveguide feed phase. Only used for Monte Carlo validation; the
/// feed phase cancels in the mean SNR.
std::complex<double> complex_channel(const UserPosition& user, double xp,
                                     const ScenarioConfig& cfg);

/// Fixed baseline: P antennas centered on the service area, spaced half a
/// wavelength apart. Throws std::invalid_argument when the span does not
/// fit inside [d1, d2].
PinchLayout cas_layout(const ScenarioConfig& cfg);

/// True when every position lies in [d1, d2] and pairwise distances are
/// at least delta - kSpacingTol.
bool is_feasible(const PinchLayout& layout, const ScenarioConfig& cfg);
void require_feasible(const PinchLayout& layout, const ScenarioConfig& cfg);

}  // namespace pinchopt
