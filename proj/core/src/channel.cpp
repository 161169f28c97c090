#include "platoonsim/channel.hpp"

#include <cmath>

namespace platoonsim::channel {

bool los_blocked(const Vec3& p1, const Vec3& p2, std::span<const Footprint> buildings) {
  const Vec2 a = p1.xy();
  const Vec2 b = p2.xy();
  for (const auto& f : buildings) {
    if (f.intersects_segment(a, b)) return true;
  }
  return false;
}

double pathloss_db(double d3d, double fc, bool los, double h_ue) {
  if (!(d3d >= 1.0)) throw DomainError("pathloss undefined below 1 m (d3d = " + std::to_string(d3d) + ")");
  const double pl_los = 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(fc);
  if (los) return pl_los;
  const double pl_nlos =
      13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(fc) - 0.6 * (h_ue - 1.5);
  return std::max(pl_los, pl_nlos);
}

double shadowing_step(double prev, double displacement, double sigma, double d_corr,
                      RngStream& rng) {
  const double rho = std::exp(-displacement / d_corr);
  return rho * prev + std::sqrt(1.0 - rho * rho) * sigma * rng.normal();
}

namespace {

struct Geometry {
  bool los;
  double d3d;
  double pl;
};

Geometry geometry(Vec2 veh, const GnbSite& gnb, const ChannelParams& params,
                  std::span<const Footprint> buildings) {
  const Vec3 ue{veh.x, veh.y, params.h_ue};
  const Vec3 bs{gnb.position.x, gnb.position.y, gnb.height};
  const bool los = !los_blocked(ue, bs, buildings);
  const double d3d = distance(ue, bs);
  return {los, d3d, pathloss_db(d3d, params.fc, los, params.h_ue)};
}

}  // namespace

ChannelSample sample_channel(const std::string& veh_id, Vec2 veh_position, const GnbSite& gnb,
                             const ChannelParams& params, std::span<const Footprint> buildings,
                             ShadowState& shadow, RngStream& rng, double t) {
  const Geometry g = geometry(veh_position, gnb, params, buildings);
  const double sigma = g.los ? params.sigma_los : params.sigma_nlos;
  if (!shadow.initialized || shadow.los != g.los) {
    // A state change starts a fresh, uncorrelated draw.
    shadow.value = sigma * rng.normal();
  } else {
    shadow.value = shadowing_step(shadow.value, distance(veh_position, shadow.last_position), sigma,
                                  params.d_corr, rng);
  }
  shadow.initialized = true;
  shadow.los = g.los;
  shadow.last_position = veh_position;

  ChannelSample s;
  s.t = t;
  s.veh_id = veh_id;
  s.los = g.los;
  s.d3d = g.d3d;
  s.pl = g.pl;
  s.shadow = shadow.value;
  s.rsrp = params.p_ref - g.pl - shadow.value;
  s.snr = s.rsrp - params.n0;
  return s;
}

double shadow_free_rsrp(Vec2 veh_position, const GnbSite& gnb, const ChannelParams& params,
                        std::span<const Footprint> buildings) {
  return params.p_ref - geometry(veh_position, gnb, params, buildings).pl;
}

}  // namespace platoonsim::channel
