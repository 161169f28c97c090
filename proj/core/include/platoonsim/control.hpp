#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "platoonsim/mobility.hpp"

namespace platoonsim::control {

struct ControllerParams {
  double gap_des = 5.0;
  double c1 = 0.5;
  double xi = 1.0;
  double omega_n = 1.26;  // rad/s
  double headway = 1.2;   // ACC time headway [s]
  double lambda = 0.1;    // ACC gain [1/s]
  double control_period = 0.1;
  double leader_gain = 1.0;  // leader speed-tracking gain [1/s]

  bool operator==(const ControllerParams&) const = default;
};

struct FallbackParams {
  double delay_high = 0.300;
  double delay_low = 0.100;
  double recovery_window = 5.0;
  int stale_periods = 3;
  bool enabled = true;

  bool operator==(const FallbackParams&) const = default;
};

/// Platooning beacon.
struct ControlMessage {
  std::string sender_id;
  std::uint64_t seq = 0;
  double pos_s = 0.0;
  double speed = 0.0;
  double accel = 0.0;
  std::int64_t ts_l4_ns = 0;

  bool operator==(const ControlMessage&) const = default;
};

struct FallbackState {
  ControlMode mode = ControlMode::kCacc;
  std::optional<double> good_since;

  bool operator==(const FallbackState&) const = default;
};

struct Kinematics {
  double speed = 0.0;
  double accel = 0.0;
};

/// Gains of the consensus constant-spacing law.
struct CaccGains {
  double a1, a2, a3, a4, a5;

  static CaccGains from(const ControllerParams& p);
};

/// a = a1 a_front + a2 a_leader + a3 (v - v_front) + a4 (v - v_leader) + a5 eps,
/// with eps = -(gap - gap_des).
double cacc_accel(const Kinematics& ego, const ControlMessage& front,
                  const ControlMessage& leader, double gap, const ControllerParams& p);

/// Constant time-headway law a = -(e_dot + lambda e) / T_h with
/// e = T_h v - gap and e_dot = v - v_front.
double acc_accel(double ego_speed, double gap, double front_speed, const ControllerParams& p);

/// Proportional speed tracking used by the leader, clamped to its limits.
double leader_accel(double speed, double target, const ControllerParams& p,
                    const mobility::VehicleSpec& spec);

FallbackState fallback_step(const FallbackState& fsm, double delay_sample, double now,
                            const FallbackParams& p);

ControlMessage make_control_msg(const mobility::VehicleState& state, std::uint64_t seq,
                                std::int64_t now_ns);

/// now - ts_l4 in seconds.
double measured_delay(const ControlMessage& msg, std::int64_t now_ns);

std::string encode_control_payload(const ControlMessage& msg);
ControlMessage decode_control_payload(const std::string& payload);

}  // namespace platoonsim::control
