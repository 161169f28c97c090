#include "platoonsim/control.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace platoonsim::control {

CaccGains CaccGains::from(const ControllerParams& p) {
  const double root = std::sqrt(p.xi * p.xi - 1.0);
  CaccGains g{};
  g.a1 = 1.0 - p.c1;
  g.a2 = p.c1;
  g.a3 = -(2.0 * p.xi - p.c1 * (p.xi + root)) * p.omega_n;
  g.a4 = -(p.xi + root) * p.omega_n * p.c1;
  g.a5 = -p.omega_n * p.omega_n;
  return g;
}

double cacc_accel(const Kinematics& ego, const ControlMessage& front, const ControlMessage& leader,
                  double gap, const ControllerParams& p) {
  const CaccGains g = CaccGains::from(p);
  const double eps = -(gap - p.gap_des);
  return g.a1 * front.accel + g.a2 * leader.accel + g.a3 * (ego.speed - front.speed) +
         g.a4 * (ego.speed - leader.speed) + g.a5 * eps;
}

double acc_accel(double ego_speed, double gap, double front_speed, const ControllerParams& p) {
  const double e = -gap + p.headway * ego_speed;
  const double e_dot = ego_speed - front_speed;
  return -(e_dot + p.lambda * e) / p.headway;
}

double leader_accel(double speed, double target, const ControllerParams& p,
                    const mobility::VehicleSpec& spec) {
  return std::clamp(p.leader_gain * (target - speed), -spec.max_decel, spec.max_accel);
}

FallbackState fallback_step(const FallbackState& fsm, double delay_sample, double now,
                            const FallbackParams& p) {
  FallbackState next = fsm;
  if (fsm.mode == ControlMode::kCacc) {
    if (delay_sample > p.delay_high) {
      next.mode = ControlMode::kAcc;
      next.good_since.reset();
    }
    return next;
  }
  if (delay_sample < p.delay_low) {
    if (!next.good_since) next.good_since = now;
    // Tolerance absorbs accumulated rounding in period-spaced timestamps.
    if (now - *next.good_since >= p.recovery_window - 1e-9) {
      next.mode = ControlMode::kCacc;
      next.good_since.reset();
    }
  } else {
    next.good_since.reset();
  }
  return next;
}

ControlMessage make_control_msg(const mobility::VehicleState& state, std::uint64_t seq,
                                std::int64_t now_ns) {
  return {state.id, seq, state.s, state.speed, state.accel, now_ns};
}

double measured_delay(const ControlMessage& msg, std::int64_t now_ns) {
  return static_cast<double>(now_ns - msg.ts_l4_ns) / 1e9;
}

std::string encode_control_payload(const ControlMessage& msg) {
  nlohmann::ordered_json j;
  j["id"] = msg.sender_id;
  j["seq"] = msg.seq;
  j["s"] = msg.pos_s;
  j["v"] = msg.speed;
  j["a"] = msg.accel;
  j["ts"] = msg.ts_l4_ns;
  return j.dump();
}

ControlMessage decode_control_payload(const std::string& payload) {
  const auto j = nlohmann::json::parse(payload);
  ControlMessage m;
  m.sender_id = j.at("id").get<std::string>();
  m.seq = j.at("seq").get<std::uint64_t>();
  m.pos_s = j.at("s").get<double>();
  m.speed = j.at("v").get<double>();
  m.accel = j.at("a").get<double>();
  m.ts_l4_ns = j.at("ts").get<std::int64_t>();
  return m;
}

}  // namespace platoonsim::control
