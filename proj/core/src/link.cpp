#include "platoonsim/link.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace platoonsim::link {

std::vector<double> default_efficiency(int mcs_count) {
  std::vector<double> eff;
  if (mcs_count <= 0) return eff;
  eff.reserve(static_cast<std::size_t>(mcs_count));
  if (mcs_count == 1) return {0.2};
  for (int i = 0; i < mcs_count; ++i) eff.push_back(0.2 + (5.5 - 0.2) * i / (mcs_count - 1));
  return eff;
}

LinkParams with_defaults(LinkParams p) {
  if (p.eff.empty()) p.eff = default_efficiency(p.mcs_count);
  return p;
}

const char* to_string(Leg leg) { return leg == Leg::kUplink ? "UL" : "DL"; }

double bler(double snr, int mcs, const LinkParams& p) {
  const double gamma = p.gamma0 + mcs * p.gamma_step;
  return 1.0 / (1.0 + std::exp(p.k_slope * (snr - gamma)));
}

int select_mcs(double snr, const LinkParams& p) {
  for (int m = p.mcs_count - 1; m >= 0; --m) {
    if (bler(snr, m, p) <= p.target_bler) return m;
  }
  return 0;
}

double service_time(int bytes, int mcs, const LinkParams& p) {
  return 8.0 * bytes / (p.eff.at(static_cast<std::size_t>(mcs)) * p.bw_ue);
}

LinkState::LinkState(LinkParams params, Leg leg) : params_(with_defaults(std::move(params))), leg_(leg) {}

void LinkState::observe_snr(double t, double snr) {
  snr_now_ = snr;
  snr_history_.emplace_back(t, snr);
  const double keep_after = t - params_.mcs_window;
  while (snr_history_.size() > 1 && snr_history_.front().first <= keep_after + 1e-12) {
    snr_history_.pop_front();
  }
}

double LinkState::mcs_snr() const {
  if (params_.mcs_window <= 0.0 || snr_history_.empty()) return snr_now_;
  double sum = 0.0;
  for (const auto& [t, snr] : snr_history_) sum += snr;
  return sum / static_cast<double>(snr_history_.size());
}

void LinkState::enqueue(const Packet& packet) {
  auto it = std::upper_bound(queue_.begin(), queue_.end(), packet.enqueue_t,
                             [](double t, const Packet& p) { return t < p.enqueue_t; });
  queue_.insert(it, packet);
}

std::vector<LinkOutcome> LinkState::advance(double horizon, RngStream& rng) {
  std::vector<LinkOutcome> done;
  for (;;) {
    if (!service_) {
      if (queue_.empty()) break;
      const double start = std::max(queue_.front().enqueue_t, busy_until_);
      if (start >= horizon) break;
      service_ = Service{queue_.front(), 0, 0, 0, start};
      queue_.pop_front();
    }
    Service& svc = *service_;
    if (svc.next_attempt >= horizon) break;

    const int mcs = select_mcs(mcs_snr(), params_);
    current_mcs_ = mcs;
    const double end = svc.next_attempt + service_time(svc.packet.bytes, mcs, params_);
    ++svc.attempts;
    ++window_.attempts;
    window_.mcs_sum += mcs;
    if (svc.attempts > 1) ++window_.retransmissions;

    const bool failed = rng.uniform() < bler(snr_now_, mcs, params_);
    bool finished = false;
    bool delivered = false;
    if (!failed) {
      finished = delivered = true;
    } else {
      ++window_.failures;
      ++svc.harq_failures;
      if (svc.harq_failures < params_.max_harq) {
        svc.next_attempt = end + params_.harq_rtt;
      } else if (++svc.cycle < params_.max_rlc) {
        svc.harq_failures = 0;
        svc.next_attempt = end + params_.rlc_rtt;
      } else {
        finished = true;
      }
    }

    if (!finished) {
      busy_until_ = svc.next_attempt;
      continue;
    }
    LinkOutcome out;
    out.packet_id = svc.packet.id;
    out.delivered = delivered;
    out.attempts = svc.attempts;
    out.enqueue_t = svc.packet.enqueue_t;
    out.deliver_t = end;
    out.delay = end - svc.packet.enqueue_t + params_.core_latency;
    out.mcs_used = mcs;
    out.leg = leg_;
    if (delivered) {
      ++window_.delivered;
    } else {
      ++window_.dropped;
    }
    busy_until_ = end;
    service_.reset();
    done.push_back(out);
  }
  return done;
}

LinkWindowStats LinkState::take_window() {
  LinkWindowStats out = window_;
  window_ = {};
  return out;
}

LinkOutcome transmit(Packet packet, LinkState& state, double snr_now, double now, RngStream& rng) {
  state.observe_snr(now, snr_now);
  packet.enqueue_t = now;
  state.enqueue(packet);
  for (const auto& out : state.advance(std::numeric_limits<double>::infinity(), rng)) {
    if (out.packet_id == packet.id) return out;
  }
  throw std::logic_error("transmit: packet was not resolved");
}

std::optional<double> e2e_delay(const LinkOutcome& ul, const LinkOutcome& dl) {
  if (!ul.delivered || !dl.delivered) return std::nullopt;
  return ul.delay + dl.delay;
}

}  // namespace platoonsim::link
