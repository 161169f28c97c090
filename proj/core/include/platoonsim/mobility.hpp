#pragma once

#include <string>

#include "platoonsim/geometry.hpp"

namespace platoonsim {

enum class ControlMode { kCacc, kAcc };

const char* to_string(ControlMode mode);

}  // namespace platoonsim

namespace platoonsim::mobility {

struct VehicleSpec {
  std::string id;
  double length = 4.0;
  double initial_s = 0.0;
  double initial_speed = 0.0;
  double max_accel = 2.5;
  double max_decel = 6.0;  // magnitude
  double tau = 0.5;        // actuation time constant [s]

  bool operator==(const VehicleSpec&) const = default;
};

struct VehicleState {
  std::string id;
  double s = 0.0;
  double speed = 0.0;
  double accel = 0.0;
  double accel_cmd = 0.0;
  ControlMode mode = ControlMode::kCacc;
};

/// Square-wave speed target for the platoon leader.
struct LeaderProfile {
  double v_low = 15.0;
  double v_high = 25.0;
  double period = 10.0;
  double phase = 0.0;  // seconds added to t before evaluating the wave

  double v_mean() const { return 0.5 * (v_low + v_high); }
  bool operator==(const LeaderProfile&) const = default;
};

VehicleState initial_state(const VehicleSpec& spec);

Vec2 path_position(const Polyline& path, double s);

/// v_high during [0, period), v_low during [period, 2 period), repeating,
/// evaluated at t + phase.
double leader_target_speed(double t, const LeaderProfile& profile);

/// First-order actuation lag followed by a semi-implicit Euler step:
///   accel' = accel + dt (clamp(cmd) - accel) / tau
///   speed' = max(0, speed + accel' dt)
///   s'     = (s + speed' dt) mod path_length
VehicleState step_vehicle(const VehicleState& state, const VehicleSpec& spec,
                          double accel_cmd, double dt, double path_length);

/// Bumper-to-bumper distance from `follower` to the rear of `front`.
double gap_front(const VehicleState& follower, const VehicleState& front,
                 double path_length, double front_length);

}  // namespace platoonsim::mobility
