#include "platoonsim/mobility.hpp"

#include <algorithm>

namespace platoonsim {

const char* to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::kCacc:
      return "CACC";
    case ControlMode::kAcc:
      return "ACC";
  }
  return "?";
}

}  // namespace platoonsim

namespace platoonsim::mobility {

VehicleState initial_state(const VehicleSpec& spec) {
  VehicleState st;
  st.id = spec.id;
  st.s = spec.initial_s;
  st.speed = spec.initial_speed;
  return st;
}

Vec2 path_position(const Polyline& path, double s) { return path.position(s); }

double leader_target_speed(double t, const LeaderProfile& profile) {
  const double phase = wrap(t + profile.phase, 2.0 * profile.period);
  return phase < profile.period ? profile.v_high : profile.v_low;
}

VehicleState step_vehicle(const VehicleState& state, const VehicleSpec& spec, double accel_cmd,
                          double dt, double path_length) {
  VehicleState next = state;
  const double cmd = std::clamp(accel_cmd, -spec.max_decel, spec.max_accel);
  next.accel_cmd = cmd;
  next.accel = state.accel + dt * (cmd - state.accel) / spec.tau;
  next.speed = std::max(0.0, state.speed + next.accel * dt);
  next.s = wrap(state.s + next.speed * dt, path_length);
  return next;
}

double gap_front(const VehicleState& follower, const VehicleState& front, double path_length,
                 double front_length) {
  return wrap(front.s - follower.s, path_length) - front_length;
}

}  // namespace platoonsim::mobility
