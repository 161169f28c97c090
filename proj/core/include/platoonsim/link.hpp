#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "platoonsim/rng.hpp"

namespace platoonsim::link {

struct LinkParams {
  int mcs_count = 29;
  double gamma0 = -3.5;     // dB, BLER midpoint of MCS 0
  double gamma_step = 1.0;  // dB per MCS index
  double k_slope = 2.0;     // 1/dB
  double target_bler = 0.1;
  std::vector<double> eff;  // bits/s/Hz per MCS; empty means the default ramp
  double bw_ue = 5e6;
  double harq_rtt = 0.008;
  int max_harq = 4;
  double rlc_rtt = 0.040;
  int max_rlc = 2;
  double core_latency = 0.010;
  int packet_bytes = 300;
  /// Length of the trailing SNR average used for MCS selection [s]. Zero
  /// selects on the latest sample.
  double mcs_window = 0.0;

  bool operator==(const LinkParams&) const = default;
};

/// Linear ramp from 0.2 to 5.5 bits/s/Hz over `mcs_count` entries.
std::vector<double> default_efficiency(int mcs_count);

/// Fills `eff` with the default ramp when it is empty.
LinkParams with_defaults(LinkParams p);

enum class Leg { kUplink, kDownlink };

const char* to_string(Leg leg);

struct Packet {
  std::uint64_t id = 0;
  double enqueue_t = 0.0;
  int bytes = 300;
};

struct LinkOutcome {
  std::uint64_t packet_id = 0;
  bool delivered = false;
  int attempts = 0;
  double enqueue_t = 0.0;
  double deliver_t = 0.0;  // completion of the last attempt
  double delay = 0.0;      // deliver_t - enqueue_t + core_latency
  int mcs_used = 0;
  Leg leg = Leg::kUplink;
};

struct LinkWindowStats {
  std::uint64_t attempts = 0;
  std::uint64_t failures = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  double mcs_sum = 0.0;
};

double bler(double snr, int mcs, const LinkParams& p);

/// Largest MCS whose BLER at `snr` does not exceed the target; 0 if none.
int select_mcs(double snr, const LinkParams& p);

double service_time(int bytes, int mcs, const LinkParams& p);

/// One FIFO server per (UE, direction). Attempts are resolved lazily as the
/// caller advances the horizon so that every attempt sees the channel that
/// was current when it started. Retransmissions and the HARQ/RLC round trips
/// keep the server busy.
class LinkState {
 public:
  LinkState(LinkParams params, Leg leg);

  /// Records the channel sample in effect from `t` on.
  void observe_snr(double t, double snr);

  /// Inserts in enqueue-time order; ties keep insertion order.
  void enqueue(const Packet& packet);

  /// Resolves every attempt that starts strictly before `horizon`.
  std::vector<LinkOutcome> advance(double horizon, RngStream& rng);

  double busy_until() const { return busy_until_; }
  std::size_t backlog() const { return queue_.size() + (service_ ? 1 : 0); }
  int current_mcs() const { return current_mcs_; }
  Leg leg() const { return leg_; }
  const LinkParams& params() const { return params_; }

  /// Returns and resets the counters accumulated since the previous call.
  LinkWindowStats take_window();

 private:
  struct Service {
    Packet packet;
    int attempts = 0;
    int harq_failures = 0;  // in the current RLC cycle
    int cycle = 0;
    double next_attempt = 0.0;
  };

  double mcs_snr() const;

  LinkParams params_;
  Leg leg_;
  std::deque<Packet> queue_;
  std::optional<Service> service_;
  double busy_until_ = 0.0;
  double snr_now_ = 0.0;
  std::deque<std::pair<double, double>> snr_history_;
  int current_mcs_ = 0;
  LinkWindowStats window_;
};

/// Enqueues `packet` at `now` and resolves it on a constant channel.
LinkOutcome transmit(Packet packet, LinkState& state, double snr_now, double now,
                     RngStream& rng);

/// Sum of both legs, or nullopt when either leg was dropped.
std::optional<double> e2e_delay(const LinkOutcome& ul, const LinkOutcome& dl);

}  // namespace platoonsim::link
