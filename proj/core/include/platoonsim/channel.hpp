#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "platoonsim/geometry.hpp"
#include "platoonsim/rng.hpp"

namespace platoonsim::channel {

struct ChannelParams {
  double fc = 3.6;        // GHz
  double p_ref = 11.5;    // dBm at 0 dB pathloss
  double n0 = -95.0;      // dBm
  double h_gnb = 10.0;
  double h_ue = 1.5;
  double sigma_los = 4.0;
  double sigma_nlos = 6.0;
  double d_corr = 37.0;
  double update_period = 0.010;

  bool operator==(const ChannelParams&) const = default;
};

struct ChannelSample {
  double t = 0.0;
  std::string veh_id;
  bool los = true;
  double d3d = 0.0;
  double pl = 0.0;
  double shadow = 0.0;
  double rsrp = 0.0;
  double snr = 0.0;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct GnbSite {
  Vec2 position;
  double height = 10.0;
};

/// Per-vehicle correlated shadowing state.
struct ShadowState {
  bool initialized = false;
  bool los = true;
  double value = 0.0;
  Vec2 last_position;
};

/// True iff the 2D projection of p1-p2 touches any footprint. Buildings are
/// prisms of unbounded height, so the z coordinates do not matter.
bool los_blocked(const Vec3& p1, const Vec3& p2, std::span<const Footprint> buildings);

/// Urban-macro pathloss below the breakpoint distance. Throws DomainError for
/// d3d < 1 m.
double pathloss_db(double d3d, double fc, bool los, double h_ue = 1.5);

/// Gauss-Markov update with rho = exp(-displacement / d_corr).
double shadowing_step(double prev, double displacement, double sigma, double d_corr,
                      RngStream& rng);

ChannelSample sample_channel(const std::string& veh_id, Vec2 veh_position, const GnbSite& gnb,
                             const ChannelParams& params, std::span<const Footprint> buildings,
                             ShadowState& shadow, RngStream& rng, double t);

/// RSRP with the shadowing term removed; used for calibration.
double shadow_free_rsrp(Vec2 veh_position, const GnbSite& gnb, const ChannelParams& params,
                        std::span<const Footprint> buildings);

}  // namespace platoonsim::channel
