#include "platoonsim/simulation.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "platoonsim/bus.hpp"
#include "platoonsim/link.hpp"
#include "platoonsim/metrics.hpp"
#include "platoonsim/rng.hpp"
#include "platoonsim/tcp_bus.hpp"
#include "platoonsim/version.hpp"

namespace platoonsim::sim {

using json = nlohmann::ordered_json;
using metrics::format_number;
using metrics::format_optional;

namespace {

constexpr double kMobilityLogPeriod = 0.1;
constexpr double kMetricWindow = 1.0;

std::int64_t steps_per(double period, double dt) {
  return std::max<std::int64_t>(1, std::llround(period / dt));
}

/// Subscribes to chan/update and turns each batch of positions into channel
/// samples.
class ChannelGenerator {
 public:
  ChannelGenerator(bus::Broker& broker, const scenario::ValidatedScenario& sc,
                   std::vector<channel::ShadowState>& shadows, std::vector<RngStream>& rngs,
                   const std::map<std::string, std::size_t>& index)
      : client_(broker, "channel"), sc_(sc), shadows_(shadows), rngs_(rngs), index_(index) {
    client_.subscribe("chan/update");
    gnb_ = {sc.config.gnb.position, sc.config.gnb.height};
  }

  std::vector<channel::ChannelSample> process() {
    std::vector<channel::ChannelSample> out;
    while (auto env = client_.poll()) {
      const auto j = json::parse(env->payload);
      const double t = static_cast<double>(j.at("t_ns").get<std::int64_t>()) / 1e9;
      for (const auto& v : j.at("veh")) {
        const std::size_t i = index_.at(v.at("id").get<std::string>());
        const Vec2 pos{v.at("x").get<double>(), v.at("y").get<double>()};
        out.push_back(channel::sample_channel(sc_.config.vehicles[i].id, pos, gnb_, sc_.config.channel,
                                              sc_.buildings, shadows_[i], rngs_[i], t));
      }
    }
    return out;
  }

 private:
  bus::LoopbackClient client_;
  const scenario::ValidatedScenario& sc_;
  std::vector<channel::ShadowState>& shadows_;
  std::vector<RngStream>& rngs_;
  const std::map<std::string, std::size_t>& index_;
  channel::GnbSite gnb_;
};

struct Delivery {
  std::size_t receiver;
  control::ControlMessage msg;
};

struct DownlinkCopy {
  std::size_t receiver;
  control::ControlMessage msg;
};

std::string csv_bool(bool b) { return b ? "1" : "0"; }

}  // namespace

struct Simulation::Impl {
  scenario::ValidatedScenario sc;
  RunOptions opt;
  std::uint64_t seed;
  RngRegistry registry;

  std::size_t n = 0;
  double dt = 0.0;
  std::int64_t tick = 0;
  std::int64_t mobility_every = 1;
  std::int64_t window_every = 1;
  std::int64_t last_window_tick = 0;

  std::vector<mobility::VehicleState> states;
  std::vector<control::FallbackState> fsms;
  std::vector<channel::ShadowState> shadows;
  std::vector<RngStream> shadow_rngs;
  std::vector<link::LinkState> ul;
  std::vector<link::LinkState> dl;
  std::vector<RngStream> ul_rngs;
  std::vector<RngStream> dl_rngs;
  std::map<std::string, std::size_t> index;

  // Receiver-side knowledge, indexed [receiver][sender].
  std::vector<std::vector<control::ControlMessage>> latest;
  std::vector<std::vector<double>> last_rx_t;
  std::vector<std::vector<std::optional<double>>> period_max;
  std::vector<std::uint64_t> seq;

  std::uint64_t next_packet_id = 1;
  std::map<std::uint64_t, control::ControlMessage> uplink_packets;
  std::map<std::uint64_t, DownlinkCopy> downlink_packets;
  std::multimap<std::int64_t, Delivery> deliveries;

  std::vector<metrics::WindowAccumulator> rsrp_acc;
  std::vector<metrics::WindowAccumulator> snr_acc;

  bus::Broker broker;
  std::unique_ptr<bus::LoopbackClient> orchestrator;
  std::unique_ptr<bus::LoopbackClient> metrics_client;
  std::unique_ptr<ChannelGenerator> generator;
  std::unique_ptr<bus::TcpBroker> tcp;
  std::unique_ptr<bus::LoopbackClient> bridge;
  std::uint64_t bus_messages = 0;

  std::unique_ptr<metrics::CsvSink> mobility_csv;
  std::unique_ptr<metrics::CsvSink> channel_csv;
  std::unique_ptr<metrics::CsvSink> channel_1s_csv;
  std::unique_ptr<metrics::CsvSink> link_csv;
  std::unique_ptr<metrics::CsvSink> app_csv;

  Trace trace;
  PacketStats packets;
  std::chrono::steady_clock::time_point wall_start;
  bool finalized = false;

  Impl(scenario::ValidatedScenario scenario, RunOptions options)
      : sc(std::move(scenario)),
        opt(std::move(options)),
        seed(opt.seed.value_or(sc.config.seed)),
        registry(seed),
        broker(static_cast<std::size_t>(sc.config.bus.max_clients)) {
    sc.config.seed = seed;
    const auto& cfg = sc.config;
    n = cfg.vehicles.size();
    dt = static_cast<double>(sc.dt_ns) / 1e9;
    mobility_every = steps_per(kMobilityLogPeriod, cfg.dt_sim);
    window_every = steps_per(kMetricWindow, cfg.dt_sim);

    for (std::size_t i = 0; i < n; ++i) {
      const auto& spec = cfg.vehicles[i];
      index[spec.id] = i;
      states.push_back(mobility::initial_state(spec));
      fsms.emplace_back();
      shadows.emplace_back();
      shadow_rngs.push_back(registry.derive("shadow/" + spec.id));
      ul.emplace_back(cfg.link, link::Leg::kUplink);
      dl.emplace_back(cfg.link, link::Leg::kDownlink);
      ul_rngs.push_back(registry.derive("link/ul/" + spec.id));
      dl_rngs.push_back(registry.derive("link/dl/" + spec.id));
    }
    // Every vehicle starts with the initial state of every other one, as if a
    // beacon had been received at t = 0.
    latest.assign(n, {});
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = 0; s < n; ++s) latest[r].push_back(control::make_control_msg(states[s], 0, 0));
    }
    last_rx_t.assign(n, std::vector<double>(n, 0.0));
    period_max.assign(n, std::vector<std::optional<double>>(n));
    seq.assign(n, 0);
    rsrp_acc.resize(n);
    snr_acc.resize(n);

    orchestrator = std::make_unique<bus::LoopbackClient>(broker, "orchestrator");
    metrics_client = std::make_unique<bus::LoopbackClient>(broker, "metrics");
    metrics_client->subscribe("veh/+/state");
    metrics_client->subscribe("veh/+/ctrl");
    metrics_client->subscribe("metrics/#");
    generator = std::make_unique<ChannelGenerator>(broker, sc, shadows, shadow_rngs, index);
    if (!cfg.bus.inprocess) {
      tcp = std::make_unique<bus::TcpBroker>(static_cast<std::uint16_t>(cfg.bus.listen_port),
                                             static_cast<std::size_t>(cfg.bus.max_clients));
      bridge = std::make_unique<bus::LoopbackClient>(broker, "bridge");
      bridge->subscribe("#");
    }

    if (!opt.out_dir.empty()) open_outputs();
    wall_start = std::chrono::steady_clock::now();
  }

  void open_outputs() {
    namespace fs = std::filesystem;
    fs::create_directories(opt.out_dir);
    const auto path = [&](const char* name) { return (fs::path(opt.out_dir) / name).string(); };
    mobility_csv = std::make_unique<metrics::CsvSink>(
        path("mobility.csv"), std::vector<std::string>{"t", "veh", "s", "x", "y", "speed", "accel", "gap_front", "mode"});
    channel_csv = std::make_unique<metrics::CsvSink>(
        path("channel.csv"),
        std::vector<std::string>{"t", "veh", "los", "d3d", "pl_db", "shadow_db", "rsrp_dbm", "snr_db"});
    channel_1s_csv = std::make_unique<metrics::CsvSink>(
        path("channel_1s.csv"), std::vector<std::string>{"t", "veh", "avg_rsrp_dbm", "avg_snr_db", "samples"});
    link_csv = std::make_unique<metrics::CsvSink>(
        path("link.csv"),
        std::vector<std::string>{"t", "veh", "dir", "avg_mcs", "avg_bler", "retx_count", "tx_ok", "tx_drop"});
    app_csv = std::make_unique<metrics::CsvSink>(
        path("app.csv"), std::vector<std::string>{"t", "veh", "from", "seq", "delay_ms", "mode"});
  }

  std::int64_t now_ns() const { return tick * sc.dt_ns; }
  double now() const { return static_cast<double>(now_ns()) / 1e9; }

  bool finished() const { return tick >= sc.steps; }

  void publish(const std::string& topic, const json& payload) {
    orchestrator->publish(topic, payload.dump(), now_ns());
  }

  // ------------------------------------------------------------ phases

  std::vector<double> commands() const {
    const auto& cfg = sc.config;
    std::vector<double> cmd(n, 0.0);
    const double t = now();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& st = states[i];
      if (i == 0) {
        cmd[i] = control::leader_accel(st.speed, mobility::leader_target_speed(t, cfg.leader), cfg.controller,
                                       cfg.vehicles[i]);
        continue;
      }
      const double gap =
          mobility::gap_front(st, states[i - 1], sc.path_length(), cfg.vehicles[i - 1].length);
      if (fsms[i].mode == ControlMode::kCacc) {
        cmd[i] = control::cacc_accel({st.speed, st.accel}, latest[i][i - 1], latest[i][0], gap, cfg.controller);
      } else {
        cmd[i] = control::acc_accel(st.speed, gap, states[i - 1].speed, cfg.controller);
      }
    }
    return cmd;
  }

  void integrate(const std::vector<double>& cmd) {
    for (std::size_t i = 0; i < n; ++i) {
      states[i] = mobility::step_vehicle(states[i], sc.config.vehicles[i], cmd[i], dt, sc.path_length());
      states[i].mode = fsms[i].mode;
    }
  }

  void update_channel() {
    json batch;
    batch["t_ns"] = now_ns();
    json veh = json::array();
    for (const auto& st : states) {
      const Vec2 p = mobility::path_position(sc.path, st.s);
      veh.push_back({{"id", st.id}, {"x", p.x}, {"y", p.y}});
    }
    batch["veh"] = std::move(veh);
    publish("chan/update", batch);

    const auto samples = generator->process();
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : samples) {
      const std::size_t i = index.at(s.veh_id);
      ul[i].observe_snr(s.t, s.snr);
      dl[i].observe_snr(s.t, s.snr);
      rsrp_acc[i].add(s.rsrp);
      snr_acc[i].add(s.snr);
      rows.push_back({format_number(s.t), s.veh_id, csv_bool(s.los), format_number(s.d3d), format_number(s.pl),
                      format_number(s.shadow), format_number(s.rsrp), format_number(s.snr)});
      trace.channel.push_back(s);
    }
    if (channel_csv) channel_csv->flush_window(now(), rows);
  }

  void send_control() {
    const double t = now();
    for (std::size_t i = 0; i < n; ++i) {
      const auto msg = control::make_control_msg(states[i], ++seq[i], now_ns());
      orchestrator->publish("veh/" + msg.sender_id + "/ctrl", control::encode_control_payload(msg), now_ns());
      const std::uint64_t id = next_packet_id++;
      uplink_packets.emplace(id, msg);
      ul[i].enqueue({id, t, sc.config.link.packet_bytes});
      ++packets.sent;
    }
  }

  double extra_delay(const control::ControlMessage& msg) const {
    if (!opt.degradation) return 0.0;
    const auto& d = *opt.degradation;
    const double sent = static_cast<double>(msg.ts_l4_ns) / 1e9;
    return (sent >= d.start - 1e-9 && sent <= d.start + d.duration + 1e-9) ? d.extra : 0.0;
  }

  void advance_links() {
    const double horizon = now() + dt;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& out : ul[i].advance(horizon, ul_rngs[i])) {
        auto node = uplink_packets.extract(out.packet_id);
        if (!out.delivered) {
          ++packets.ul_dropped;
          continue;
        }
        ++packets.ul_delivered;
        const double at_gnb = out.enqueue_t + out.delay;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == i) continue;
          const std::uint64_t id = next_packet_id++;
          downlink_packets.emplace(id, DownlinkCopy{r, node.mapped()});
          dl[r].enqueue({id, at_gnb, sc.config.link.packet_bytes});
          ++packets.dl_enqueued;
        }
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (const auto& out : dl[r].advance(horizon, dl_rngs[r])) {
        auto node = downlink_packets.extract(out.packet_id);
        if (!out.delivered) {
          ++packets.dl_dropped;
          continue;
        }
        ++packets.dl_delivered;
        const auto& copy = node.mapped();
        const double arrival = out.enqueue_t + out.delay + extra_delay(copy.msg);
        const auto at_tick = static_cast<std::int64_t>(std::ceil(arrival / dt - 1e-9));
        deliveries.emplace(std::max(at_tick, tick + 1), Delivery{copy.receiver, copy.msg});
      }
    }
  }

  bool relevant(std::size_t receiver, std::size_t sender) const {
    return receiver > 0 && (sender == 0 || sender + 1 == receiver);
  }

  void deliver() {
    const double t = now();
    std::vector<std::vector<std::string>> rows;
    while (!deliveries.empty() && deliveries.begin()->first <= tick) {
      auto node = deliveries.extract(deliveries.begin());
      const auto& d = node.mapped();
      const std::size_t s = index.at(d.msg.sender_id);
      const double delay = control::measured_delay(d.msg, now_ns());
      ++packets.app_received;
      if (d.msg.seq > latest[d.receiver][s].seq) latest[d.receiver][s] = d.msg;
      last_rx_t[d.receiver][s] = t;
      if (relevant(d.receiver, s)) {
        auto& m = period_max[d.receiver][s];
        m = std::max(m.value_or(delay), delay);
      }
      const ControlMode mode = fsms[d.receiver].mode;
      trace.app.push_back({t, states[d.receiver].id, d.msg.sender_id, d.msg.seq, delay, mode});
      rows.push_back({format_number(t), states[d.receiver].id, d.msg.sender_id, std::to_string(d.msg.seq),
                      format_number(delay * 1e3), to_string(mode)});
    }
    if (app_csv && !rows.empty()) app_csv->append(rows);
  }

  void update_fallback() {
    const auto& fp = sc.config.fallback;
    const double t = now();
    const double stale_after = fp.stale_periods * sc.config.controller.control_period;
    for (std::size_t r = 1; r < n; ++r) {
      std::optional<double> sample;
      bool synthetic = false;
      for (std::size_t s = 0; s < n; ++s) {
        if (!relevant(r, s)) continue;
        if (period_max[r][s] && (!sample || *period_max[r][s] > *sample)) {
          sample = period_max[r][s];
          synthetic = false;
        }
        period_max[r][s].reset();
        if (t - last_rx_t[r][s] >= stale_after - 1e-9) {
          const double age = control::measured_delay(latest[r][s], now_ns());
          if (!sample || age > *sample) {
            sample = age;
            synthetic = true;
          }
        }
      }
      if (!sample) continue;
      const ControlMode before = fsms[r].mode;
      if (fp.enabled) fsms[r] = control::fallback_step(fsms[r], *sample, t, fp);
      trace.fsm.push_back({t, states[r].id, *sample, synthetic, before, fsms[r].mode});
    }
  }

  void log_mobility() {
    const double t = now();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& st = states[i];
      MobilityRow row{t, st.id, st.s, mobility::path_position(sc.path, st.s), st.speed, st.accel, std::nullopt, st.mode};
      if (i > 0) {
        row.gap_front = mobility::gap_front(st, states[i - 1], sc.path_length(), sc.config.vehicles[i - 1].length);
      }
      rows.push_back({format_number(t), st.id, format_number(st.s), format_number(row.position.x),
                      format_number(row.position.y), format_number(st.speed), format_number(st.accel),
                      format_optional(row.gap_front), to_string(st.mode)});
      publish("veh/" + st.id + "/state", json{{"s", st.s},
                                             {"x", row.position.x},
                                             {"y", row.position.y},
                                             {"speed", st.speed},
                                             {"accel", st.accel},
                                             {"mode", to_string(st.mode)}});
      trace.mobility.push_back(std::move(row));
    }
    if (mobility_csv) mobility_csv->flush_window(t, rows);
  }

  void flush_windows() {
    const double t = now();
    if (tick == last_window_tick) return;
    last_window_tick = tick;

    std::vector<std::vector<std::string>> link_rows;
    std::vector<std::vector<std::string>> chan_rows;
    json record = json::array();
    for (auto leg : {link::Leg::kUplink, link::Leg::kDownlink}) {
      auto& states_for_leg = leg == link::Leg::kUplink ? ul : dl;
      std::vector<LinkWindow> rows;
      for (std::size_t i = 0; i < n; ++i) {
        const auto w = states_for_leg[i].take_window();
        LinkWindow lw{t, states[i].id, to_string(leg), std::nullopt, std::nullopt, w.retransmissions, w.delivered, w.dropped};
        if (w.attempts > 0) {
          lw.avg_mcs = w.mcs_sum / static_cast<double>(w.attempts);
          lw.avg_bler = static_cast<double>(w.failures) / static_cast<double>(w.attempts);
        }
        rows.push_back(lw);
      }
      // Cross-vehicle mean row.
      metrics::WindowAccumulator mcs, bler, retx, ok, drop;
      for (const auto& lw : rows) {
        if (lw.avg_mcs) mcs.add(*lw.avg_mcs);
        if (lw.avg_bler) bler.add(*lw.avg_bler);
        retx.add(static_cast<double>(lw.retx));
        ok.add(static_cast<double>(lw.tx_ok));
        drop.add(static_cast<double>(lw.tx_drop));
      }
      for (const auto& lw : rows) {
        link_rows.push_back({format_number(t), lw.vehicle, lw.dir, format_optional(lw.avg_mcs),
                             format_optional(lw.avg_bler), std::to_string(lw.retx), std::to_string(lw.tx_ok),
                             std::to_string(lw.tx_drop)});
        record.push_back({{"veh", lw.vehicle}, {"dir", lw.dir}, {"retx", lw.retx}});
        trace.links.push_back(lw);
      }
      if (n > 0) {
        link_rows.push_back({format_number(t), "all", to_string(leg), format_optional(mcs.summary().mean),
                             format_optional(bler.summary().mean), format_optional(retx.summary().mean),
                             format_optional(ok.summary().mean), format_optional(drop.summary().mean)});
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = rsrp_acc[i].take();
      const auto s = snr_acc[i].take();
      trace.channel_windows.push_back({t, states[i].id, r.mean, s.mean, r.count});
      chan_rows.push_back({format_number(t), states[i].id, format_optional(r.mean), format_optional(s.mean),
                           std::to_string(r.count)});
    }
    if (link_csv) link_csv->flush_window(t, link_rows);
    if (channel_1s_csv) channel_1s_csv->flush_window(t, chan_rows);
    publish("metrics/link", record);
  }

  void step() {
    if (finished()) return;
    const auto cmd = commands();
    integrate(cmd);
    ++tick;

    if (tick % sc.channel_every == 0) update_channel();
    const bool control_tick = tick % sc.control_every == 0;
    if (control_tick) send_control();
    advance_links();
    deliver();
    if (control_tick) update_fallback();
    if (tick % mobility_every == 0) log_mobility();
    if (tick % window_every == 0) flush_windows();
    publish("sim/clock", json{{"tick", tick}, {"t_ns", now_ns()}});

    bus_messages += metrics_client->inbox().size();
    metrics_client->inbox().clear();
    if (bridge) {
      while (auto env = bridge->poll()) tcp->publish(*env);
    }
    if (opt.realtime) {
      std::this_thread::sleep_until(wall_start + std::chrono::nanoseconds(now_ns()));
    }
  }

  void finalize(bool complete, const std::string& error) {
    if (finalized) return;
    finalized = true;
    if (complete && tick % window_every != 0) flush_windows();
    if (opt.out_dir.empty()) return;
    json run;
    run["version"] = kVersion;
    run["seed"] = seed;
    run["t_start"] = 0.0;
    run["t_end"] = now();
    run["complete"] = complete;
    if (!error.empty()) run["error"] = error;
    run["rng_streams"] = registry.labels();
    run["realtime"] = opt.realtime;
    if (opt.degradation) {
      run["forced_degradation"] = {{"start", opt.degradation->start},
                                   {"duration", opt.degradation->duration},
                                   {"extra_delay", opt.degradation->extra}};
    }
    run["packets"] = {{"sent", packets.sent},
                      {"ul_delivered", packets.ul_delivered},
                      {"ul_dropped", packets.ul_dropped},
                      {"dl_enqueued", packets.dl_enqueued},
                      {"dl_delivered", packets.dl_delivered},
                      {"dl_dropped", packets.dl_dropped},
                      {"app_received", packets.app_received},
                      {"in_flight", in_flight()}};
    run["config"] = json::parse(scenario::serialize_scenario(sc.config));
    std::ofstream out(std::filesystem::path(opt.out_dir) / "run.json", std::ios::binary | std::ios::trunc);
    out << run.dump(2) << "\n";
  }

  std::size_t in_flight() const {
    return uplink_packets.size() + downlink_packets.size() + deliveries.size();
  }
};

Simulation::Simulation(scenario::ValidatedScenario scenario, RunOptions options)
    : impl_(std::make_unique<Impl>(std::move(scenario), std::move(options))) {}

Simulation::~Simulation() = default;

void Simulation::step() { impl_->step(); }

void Simulation::run() {
  try {
    while (!impl_->finished()) impl_->step();
  } catch (const std::exception& e) {
    impl_->finalize(false, e.what());
    throw;
  }
  impl_->finalize(true, {});
}

void Simulation::finalize(bool complete, const std::string& error) { impl_->finalize(complete, error); }

bool Simulation::finished() const { return impl_->finished(); }
std::int64_t Simulation::tick() const { return impl_->tick; }
double Simulation::time() const { return impl_->now(); }
std::uint64_t Simulation::seed() const { return impl_->seed; }
const scenario::ValidatedScenario& Simulation::scenario() const { return impl_->sc; }
const std::vector<mobility::VehicleState>& Simulation::vehicles() const { return impl_->states; }
const std::vector<control::FallbackState>& Simulation::fallback() const { return impl_->fsms; }
const Trace& Simulation::trace() const { return impl_->trace; }
const PacketStats& Simulation::packets() const { return impl_->packets; }
std::size_t Simulation::in_flight() const { return impl_->in_flight(); }
std::vector<std::string> Simulation::rng_labels() const { return impl_->registry.labels(); }
std::uint64_t Simulation::bus_messages() const { return impl_->bus_messages; }

RsrpProfile shadow_free_profile(const scenario::ValidatedScenario& sc, double step) {
  RsrpProfile prof;
  const auto& cfg = sc.config;
  if (cfg.vehicles.empty()) return prof;
  const channel::GnbSite gnb{cfg.gnb.position, cfg.gnb.height};
  const double lead_s = cfg.vehicles.front().initial_s;
  const auto count = static_cast<std::int64_t>(std::ceil(sc.path_length() / step));
  for (std::int64_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) * step;
    double sum = 0.0;
    for (const auto& v : cfg.vehicles) {
      const Vec2 p = mobility::path_position(sc.path, s + (v.initial_s - lead_s));
      sum += channel::shadow_free_rsrp(p, gnb, cfg.channel, sc.buildings);
    }
    const double mean = sum / static_cast<double>(cfg.vehicles.size());
    if (k == 0 || mean < prof.min) prof.min = mean;
    if (k == 0 || mean > prof.max) prof.max = mean;
    prof.leader_s.push_back(s);
    prof.mean_rsrp.push_back(mean);
  }
  return prof;
}

Trace run_scenario(const scenario::ScenarioConfig& config, RunOptions options) {
  Simulation sim(scenario::validate(config), std::move(options));
  sim.run();
  return sim.trace();
}

}  // namespace platoonsim::sim
