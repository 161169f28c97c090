#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "platoonsim/channel.hpp"
#include "platoonsim/control.hpp"
#include "platoonsim/mobility.hpp"
#include "platoonsim/scenario.hpp"

namespace platoonsim::sim {

/// Adds `extra` seconds of delay to every control packet sent in
/// [start, start + duration].
struct ForcedDegradation {
  double start = 0.0;
  double duration = 0.0;
  double extra = 0.4;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the scenario seed
  std::string out_dir;                // empty: no files are written
  bool realtime = false;
  std::optional<ForcedDegradation> degradation;
};

/// One control message handed to a receiving application.
struct AppEvent {
  double t = 0.0;
  std::string receiver;
  std::string sender;
  std::uint64_t seq = 0;
  double delay = 0.0;  // receive time - ts_l4
  ControlMode mode = ControlMode::kCacc;
};

/// One delay sample consumed by a follower's fallback machine.
struct FsmSample {
  double t = 0.0;
  std::string vehicle;
  double delay = 0.0;
  bool synthetic = false;  // produced by the staleness rule
  ControlMode before = ControlMode::kCacc;
  ControlMode after = ControlMode::kCacc;
};

/// Per-second link counters for one vehicle and direction.
struct LinkWindow {
  double t = 0.0;
  std::string vehicle;
  std::string dir;
  std::optional<double> avg_mcs;
  std::optional<double> avg_bler;
  std::uint64_t retx = 0;
  std::uint64_t tx_ok = 0;
  std::uint64_t tx_drop = 0;
};

/// Per-second channel means for one vehicle.
struct ChannelWindow {
  double t = 0.0;
  std::string vehicle;
  std::optional<double> rsrp;
  std::optional<double> snr;
  std::size_t samples = 0;
};

struct MobilityRow {
  double t = 0.0;
  std::string vehicle;
  double s = 0.0;
  Vec2 position;
  double speed = 0.0;
  double accel = 0.0;
  std::optional<double> gap_front;
  ControlMode mode = ControlMode::kCacc;
};

/// Packet accounting across the run.
struct PacketStats {
  std::uint64_t sent = 0;         // control messages handed to the uplink
  std::uint64_t ul_delivered = 0;
  std::uint64_t ul_dropped = 0;
  std::uint64_t dl_enqueued = 0;
  std::uint64_t dl_delivered = 0;
  std::uint64_t dl_dropped = 0;
  std::uint64_t app_received = 0;
};

/// In-memory trace kept alongside the CSV outputs.
struct Trace {
  std::vector<MobilityRow> mobility;
  std::vector<channel::ChannelSample> channel;
  std::vector<ChannelWindow> channel_windows;
  std::vector<LinkWindow> links;
  std::vector<AppEvent> app;
  std::vector<FsmSample> fsm;
};

/// Fixed-step co-simulation of mobility, control, channel and link. All
/// components advance on the same integer tick; every random draw comes from
/// a named stream derived from the run seed.
class Simulation {
 public:
  Simulation(scenario::ValidatedScenario scenario, RunOptions options = {});
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Advances one tick.
  void step();
  /// Steps to the configured duration and finalizes the outputs.
  void run();
  /// Writes run.json; `complete` is false for aborted runs.
  void finalize(bool complete, const std::string& error = {});

  bool finished() const;
  std::int64_t tick() const;
  double time() const;
  std::uint64_t seed() const;

  const scenario::ValidatedScenario& scenario() const;
  const std::vector<mobility::VehicleState>& vehicles() const;
  const std::vector<control::FallbackState>& fallback() const;
  const Trace& trace() const;
  const PacketStats& packets() const;
  std::size_t in_flight() const;
  std::vector<std::string> rng_labels() const;
  /// Messages seen by bus subscribers; nonzero once the bus is wired.
  std::uint64_t bus_messages() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Shadow-free RSRP of the platoon along the loop: the vehicles keep their
/// initial relative offsets while the leader visits every `step` metres.
struct RsrpProfile {
  std::vector<double> leader_s;
  std::vector<double> mean_rsrp;  // dB average over the vehicles
  double min = 0.0;
  double max = 0.0;
};

RsrpProfile shadow_free_profile(const scenario::ValidatedScenario& scenario, double step = 0.5);

/// Convenience wrapper: validate, run to completion, return the trace.
Trace run_scenario(const scenario::ScenarioConfig& config, RunOptions options = {});

}  // namespace platoonsim::sim
