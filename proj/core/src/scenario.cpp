#include "platoonsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace platoonsim::scenario {

using json = nlohmann::ordered_json;

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

SchemaError::SchemaError(std::string path, const std::string& message)
    : std::runtime_error("schema error at " + (path.empty() ? std::string("/") : path) + ": " +
                         message),
      path_(std::move(path)) {}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = "scenario validation failed:";
  for (const auto& v : violations) out += "\n  [" + v.code + "] " + v.field + ": " + v.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

bool ValidationError::has(const std::string& code) const {
  for (const auto& v : violations_) {
    if (v.code == code) return true;
  }
  return false;
}

namespace {

const char* type_name(const json& j) {
  if (j.is_number_integer()) return "integer";
  return j.type_name();
}

/// Tracks which keys of an object were consumed so leftovers can be reported.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError(path_, std::string("expected object, got ") + type_name(j_));
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json* find(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    used_.insert(key);
    return &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) throw SchemaError(child(key), "missing required key");
    return *v;
  }

  std::string child(const std::string& key) const { return path_ + "/" + key; }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) out = as_number(*v, child(key));
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw SchemaError(child(key), std::string("expected integer, got ") + type_name(*v));
      const auto value = v->get<std::int64_t>();
      if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
        throw SchemaError(child(key), "integer out of range");
      }
      out = static_cast<int>(value);
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw SchemaError(child(key), std::string("expected boolean, got ") + type_name(*v));
      out = v->get<bool>();
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw SchemaError(child(key), std::string("expected string, got ") + type_name(*v));
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.contains(it.key())) throw SchemaError(child(it.key()), "unknown key");
    }
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, std::string("expected number, got ") + type_name(v));
    return v.get<double>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

Vec2 read_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, y]");
  return {ObjectReader::as_number(j[0], path + "/0"), ObjectReader::as_number(j[1], path + "/1")};
}

std::vector<Vec2> read_points(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, std::string("expected array, got ") + type_name(j));
  std::vector<Vec2> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_point(j[i], path + "/" + std::to_string(i)));
  return out;
}

mobility::VehicleSpec read_vehicle(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  mobility::VehicleSpec v;
  const json& id = r.require("id");
  if (!id.is_string()) throw SchemaError(r.child("id"), "expected string");
  v.id = id.get<std::string>();
  r.number("length", v.length);
  r.number("initial_s", v.initial_s);
  r.number("initial_speed", v.initial_speed);
  r.number("max_accel", v.max_accel);
  r.number("max_decel", v.max_decel);
  r.number("tau", v.tau);
  r.finish();
  return v;
}

void read_leader(const json& j, mobility::LeaderProfile& p) {
  ObjectReader r(j, "/leader");
  r.number("v_low", p.v_low);
  r.number("v_high", p.v_high);
  r.number("period", p.period);
  r.number("phase", p.phase);
  r.finish();
}

void read_controller(const json& j, control::ControllerParams& p) {
  ObjectReader r(j, "/controller");
  r.number("gap_des", p.gap_des);
  r.number("c1", p.c1);
  r.number("xi", p.xi);
  r.number("omega_n", p.omega_n);
  r.number("headway", p.headway);
  r.number("lambda", p.lambda);
  r.number("control_period", p.control_period);
  r.number("leader_gain", p.leader_gain);
  r.finish();
}

void read_fallback(const json& j, control::FallbackParams& p) {
  ObjectReader r(j, "/fallback");
  r.number("delay_high", p.delay_high);
  r.number("delay_low", p.delay_low);
  r.number("recovery_window", p.recovery_window);
  r.integer("stale_periods", p.stale_periods);
  r.boolean("enabled", p.enabled);
  r.finish();
}

void read_channel(const json& j, channel::ChannelParams& p) {
  ObjectReader r(j, "/channel");
  r.number("fc", p.fc);
  r.number("p_ref", p.p_ref);
  r.number("n0", p.n0);
  r.number("h_gnb", p.h_gnb);
  r.number("h_ue", p.h_ue);
  r.number("sigma_los", p.sigma_los);
  r.number("sigma_nlos", p.sigma_nlos);
  r.number("d_corr", p.d_corr);
  r.number("update_period", p.update_period);
  r.finish();
}

void read_link(const json& j, link::LinkParams& p) {
  ObjectReader r(j, "/link");
  r.integer("mcs_count", p.mcs_count);
  r.number("gamma0", p.gamma0);
  r.number("gamma_step", p.gamma_step);
  r.number("k_slope", p.k_slope);
  r.number("target_bler", p.target_bler);
  if (const json* eff = r.find("eff")) {
    if (!eff->is_array()) throw SchemaError("/link/eff", "expected array of numbers");
    p.eff.clear();
    for (std::size_t i = 0; i < eff->size(); ++i) {
      p.eff.push_back(ObjectReader::as_number((*eff)[i], "/link/eff/" + std::to_string(i)));
    }
  }
  r.number("bw_ue", p.bw_ue);
  r.number("harq_rtt", p.harq_rtt);
  r.integer("max_harq", p.max_harq);
  r.number("rlc_rtt", p.rlc_rtt);
  r.integer("max_rlc", p.max_rlc);
  r.number("core_latency", p.core_latency);
  r.integer("packet_bytes", p.packet_bytes);
  r.number("mcs_window", p.mcs_window);
  r.finish();
}

void read_bus(const json& j, BusParams& p) {
  ObjectReader r(j, "/bus");
  r.integer("listen_port", p.listen_port);
  r.integer("max_clients", p.max_clients);
  r.boolean("inprocess", p.inprocess);
  r.finish();
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  // nlohmann reports the 1-based index of the last byte read.
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw SyntaxError(e.what(), line, column);
  }

  ObjectReader root(doc, "");
  ScenarioConfig cfg;
  root.number("duration", cfg.duration);
  root.number("dt_sim", cfg.dt_sim);
  if (const json* seed = root.find("seed")) {
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<std::int64_t>() >= 0)) {
      throw SchemaError("/seed", "expected unsigned 64-bit integer");
    }
    cfg.seed = seed->get<std::uint64_t>();
  }
  root.integer("max_nodes", cfg.max_nodes);

  cfg.path = read_points(root.require("path"), "/path");

  if (const json* b = root.find("buildings")) {
    if (!b->is_array()) throw SchemaError("/buildings", "expected array of polygons");
    for (std::size_t i = 0; i < b->size(); ++i) {
      cfg.buildings.push_back(read_points((*b)[i], "/buildings/" + std::to_string(i)));
    }
  }

  if (const json* c = root.find("channel")) read_channel(*c, cfg.channel);

  {
    ObjectReader g(root.require("gnb"), "/gnb");
    cfg.gnb.position = read_point(g.require("position"), "/gnb/position");
    cfg.gnb.height = cfg.channel.h_gnb;
    if (const json* h = g.find("height")) {
      const double height = ObjectReader::as_number(*h, "/gnb/height");
      if (doc.contains("channel") && doc["channel"].contains("h_gnb") && height != cfg.channel.h_gnb) {
        throw SchemaError("/gnb/height", "conflicts with /channel/h_gnb");
      }
      cfg.gnb.height = height;
      cfg.channel.h_gnb = height;
    }
    g.finish();
  }

  const json& vehicles = root.require("vehicles");
  if (!vehicles.is_array()) throw SchemaError("/vehicles", "expected array of vehicle objects");
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    cfg.vehicles.push_back(read_vehicle(vehicles[i], "/vehicles/" + std::to_string(i)));
  }
  if (cfg.max_nodes < 1 || cfg.vehicles.size() > static_cast<std::size_t>(cfg.max_nodes) - 1) {
    throw SchemaError("/vehicles", "node budget exceeded: " + std::to_string(cfg.vehicles.size()) +
                                       " vehicles but max_nodes = " + std::to_string(cfg.max_nodes) +
                                       " allows at most max_nodes - 1 (one node is the gNB)");
  }

  if (const json* l = root.find("leader")) read_leader(*l, cfg.leader);
  if (const json* c = root.find("controller")) read_controller(*c, cfg.controller);
  if (const json* f = root.find("fallback")) read_fallback(*f, cfg.fallback);
  if (const json* l = root.find("link")) read_link(*l, cfg.link);
  if (const json* b = root.find("bus")) read_bus(*b, cfg.bus);
  root.finish();

  cfg.link = link::with_defaults(std::move(cfg.link));
  return cfg;
}

std::string serialize_scenario(const ScenarioConfig& c) {
  json doc;
  doc["duration"] = c.duration;
  doc["dt_sim"] = c.dt_sim;
  doc["seed"] = c.seed;
  doc["max_nodes"] = c.max_nodes;
  json path = json::array();
  for (Vec2 p : c.path) path.push_back(point_json(p));
  doc["path"] = std::move(path);
  json buildings = json::array();
  for (const auto& poly : c.buildings) {
    json ring = json::array();
    for (Vec2 p : poly) ring.push_back(point_json(p));
    buildings.push_back(std::move(ring));
  }
  doc["buildings"] = std::move(buildings);
  doc["gnb"] = {{"position", point_json(c.gnb.position)}, {"height", c.gnb.height}};
  json vehicles = json::array();
  for (const auto& v : c.vehicles) {
    vehicles.push_back({{"id", v.id},
                        {"length", v.length},
                        {"initial_s", v.initial_s},
                        {"initial_speed", v.initial_speed},
                        {"max_accel", v.max_accel},
                        {"max_decel", v.max_decel},
                        {"tau", v.tau}});
  }
  doc["vehicles"] = std::move(vehicles);
  doc["leader"] = {{"v_low", c.leader.v_low}, {"v_high", c.leader.v_high}, {"period", c.leader.period}, {"phase", c.leader.phase}};
  const auto& k = c.controller;
  doc["controller"] = {{"gap_des", k.gap_des},   {"c1", k.c1},
                       {"xi", k.xi},             {"omega_n", k.omega_n},
                       {"headway", k.headway},   {"lambda", k.lambda},
                       {"control_period", k.control_period}, {"leader_gain", k.leader_gain}};
  const auto& f = c.fallback;
  doc["fallback"] = {{"delay_high", f.delay_high},
                     {"delay_low", f.delay_low},
                     {"recovery_window", f.recovery_window},
                     {"stale_periods", f.stale_periods},
                     {"enabled", f.enabled}};
  const auto& ch = c.channel;
  doc["channel"] = {{"fc", ch.fc},           {"p_ref", ch.p_ref},
                    {"n0", ch.n0},           {"h_gnb", ch.h_gnb},
                    {"h_ue", ch.h_ue},       {"sigma_los", ch.sigma_los},
                    {"sigma_nlos", ch.sigma_nlos}, {"d_corr", ch.d_corr},
                    {"update_period", ch.update_period}};
  const auto& l = c.link;
  doc["link"] = {{"mcs_count", l.mcs_count},       {"gamma0", l.gamma0},
                 {"gamma_step", l.gamma_step},     {"k_slope", l.k_slope},
                 {"target_bler", l.target_bler},   {"eff", l.eff},
                 {"bw_ue", l.bw_ue},               {"harq_rtt", l.harq_rtt},
                 {"max_harq", l.max_harq},         {"rlc_rtt", l.rlc_rtt},
                 {"max_rlc", l.max_rlc},           {"core_latency", l.core_latency},
                 {"packet_bytes", l.packet_bytes}, {"mcs_window", l.mcs_window}};
  doc["bus"] = {{"listen_port", c.bus.listen_port},
                {"max_clients", c.bus.max_clients},
                {"inprocess", c.bus.inprocess}};
  return doc.dump(2) + "\n";
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

namespace {

class Checker {
 public:
  void require(bool ok, const char* code, std::string field, std::string message) {
    if (!ok) out.push_back({code, std::move(field), std::move(message)});
  }

  void finite(double v, const std::string& field) {
    require(std::isfinite(v), "NON_FINITE", field, "value must be finite");
  }

  /// True if `period` is an integer multiple of `dt` (relative tolerance 1e-9).
  static bool divides(double dt, double period, std::int64_t* ratio = nullptr) {
    if (!(dt > 0.0) || !(period > 0.0)) return false;
    const double q = period / dt;
    const double r = std::round(q);
    if (r < 1.0 || std::abs(q - r) > 1e-9 * std::max(1.0, q)) return false;
    if (ratio != nullptr) *ratio = static_cast<std::int64_t>(r);
    return true;
  }

  std::vector<Violation> out;
};

}  // namespace

ValidatedScenario validate(const ScenarioConfig& c) {
  Checker ck;

  for (auto [v, name] : {std::pair{c.duration, "/duration"}, {c.dt_sim, "/dt_sim"}}) ck.finite(v, name);
  ck.require(c.duration > 0.0, "DURATION_RANGE", "/duration", "must be > 0");
  ck.require(c.dt_sim > 0.0, "DT_RANGE", "/dt_sim", "must be > 0");

  // Path.
  bool path_ok = true;
  for (std::size_t i = 0; i < c.path.size(); ++i) {
    if (!std::isfinite(c.path[i].x) || !std::isfinite(c.path[i].y)) {
      ck.finite(NAN, "/path/" + std::to_string(i));
      path_ok = false;
    }
  }
  if (c.path.size() < 3) {
    ck.require(false, "PATH_TOO_SHORT", "/path", "needs at least 3 waypoints");
    path_ok = false;
  } else if (path_ok) {
    if (distance(c.path.front(), c.path.back()) > 1e-9) {
      ck.require(false, "PATH_NOT_CLOSED", "/path", "first and last waypoint must coincide");
      path_ok = false;
    }
  }
  double path_length = 0.0;
  if (path_ok) {
    for (std::size_t i = 1; i < c.path.size(); ++i) path_length += distance(c.path[i - 1], c.path[i]);
    if (!(path_length > 0.0)) {
      ck.require(false, "PATH_ZERO_LENGTH", "/path", "total length must be positive");
      path_ok = false;
    }
  }

  // Buildings.
  for (std::size_t i = 0; i < c.buildings.size(); ++i) {
    const std::string field = "/buildings/" + std::to_string(i);
    std::vector<Vec2> ring = c.buildings[i];
    bool finite = true;
    for (Vec2 p : ring) finite = finite && std::isfinite(p.x) && std::isfinite(p.y);
    if (!finite) {
      ck.finite(NAN, field);
      continue;
    }
    if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    if (ring.size() < 3) {
      ck.require(false, "POLYGON_DEGENERATE", field, "needs at least 3 distinct vertices");
    } else {
      ck.require(is_simple_polygon(ring), "POLYGON_NOT_SIMPLE", field, "polygon self-intersects");
    }
  }

  // Node budget.
  ck.require(c.max_nodes >= 1, "MAX_NODES_RANGE", "/max_nodes", "must be >= 1");
  ck.require(c.max_nodes >= 1 && c.vehicles.size() + 1 <= static_cast<std::size_t>(c.max_nodes),
             "NODE_BUDGET", "/vehicles",
             "vehicle count must not exceed max_nodes - 1 (one node is the gNB)");

  // Vehicles.
  std::set<std::string> ids;
  for (std::size_t i = 0; i < c.vehicles.size(); ++i) {
    const auto& v = c.vehicles[i];
    const std::string field = "/vehicles/" + std::to_string(i);
    for (double x : {v.length, v.initial_s, v.initial_speed, v.max_accel, v.max_decel, v.tau}) ck.finite(x, field);
    ck.require(!v.id.empty() && v.id.find_first_of(" \t\r\n/#") == std::string::npos, "VEHICLE_ID",
               field + "/id", "id must be non-empty without whitespace, '/' or '#'");
    ck.require(ids.insert(v.id).second, "VEHICLE_ID_DUPLICATE", field + "/id", "duplicate id " + v.id);
    ck.require(v.length > 0.0 && v.max_accel > 0.0 && v.max_decel > 0.0 && v.tau > 0.0,
               "VEHICLE_PARAM_RANGE", field, "length, max_accel, max_decel and tau must be > 0");
    ck.require(v.initial_speed >= 0.0, "VEHICLE_PARAM_RANGE", field + "/initial_speed", "must be >= 0");
    if (path_ok) {
      ck.require(v.initial_s >= 0.0 && v.initial_s < path_length, "VEHICLE_POSITION",
                 field + "/initial_s", "must lie in [0, path length)");
    }
  }

  const auto& lp = c.leader;
  for (double x : {lp.v_low, lp.v_high, lp.period, lp.phase}) ck.finite(x, "/leader");
  ck.require(lp.v_low > 0.0 && lp.v_low < lp.v_high && lp.period > 0.0, "LEADER_PROFILE_RANGE",
             "/leader", "need 0 < v_low < v_high and period > 0");

  const auto& k = c.controller;
  for (double x : {k.gap_des, k.c1, k.xi, k.omega_n, k.headway, k.lambda, k.control_period, k.leader_gain}) {
    ck.finite(x, "/controller");
  }
  ck.require(k.gap_des > 0.0, "CONTROLLER_RANGE", "/controller/gap_des", "must be > 0");
  ck.require(k.c1 > 0.0 && k.c1 < 1.0, "CONTROLLER_RANGE", "/controller/c1", "must lie in (0, 1)");
  ck.require(k.xi >= 1.0, "CONTROLLER_RANGE", "/controller/xi", "must be >= 1");
  ck.require(k.omega_n > 0.0, "CONTROLLER_RANGE", "/controller/omega_n", "must be > 0");
  ck.require(k.headway > 0.0, "CONTROLLER_RANGE", "/controller/headway", "must be > 0");
  ck.require(k.lambda > 0.0, "CONTROLLER_RANGE", "/controller/lambda", "must be > 0");
  ck.require(k.leader_gain > 0.0, "CONTROLLER_RANGE", "/controller/leader_gain", "must be > 0");

  const auto& f = c.fallback;
  for (double x : {f.delay_high, f.delay_low, f.recovery_window}) ck.finite(x, "/fallback");
  ck.require(f.delay_low >= 0.0 && f.delay_low < f.delay_high, "FALLBACK_RANGE", "/fallback",
             "need 0 <= delay_low < delay_high");
  ck.require(f.recovery_window > 0.0, "FALLBACK_RANGE", "/fallback/recovery_window", "must be > 0");
  ck.require(f.stale_periods >= 1, "FALLBACK_RANGE", "/fallback/stale_periods", "must be >= 1");

  const auto& ch = c.channel;
  for (double x : {ch.fc, ch.p_ref, ch.n0, ch.h_gnb, ch.h_ue, ch.sigma_los, ch.sigma_nlos, ch.d_corr,
                   ch.update_period}) {
    ck.finite(x, "/channel");
  }
  ck.require(ch.fc > 0.0, "CHANNEL_RANGE", "/channel/fc", "must be > 0");
  ck.require(ch.sigma_los >= 0.0 && ch.sigma_nlos >= 0.0, "CHANNEL_RANGE", "/channel", "sigma must be >= 0");
  ck.require(ch.d_corr > 0.0, "CHANNEL_RANGE", "/channel/d_corr", "must be > 0");
  ck.require(ch.h_ue > 0.0 && ch.h_gnb > 0.0, "CHANNEL_RANGE", "/channel", "heights must be > 0");
  ck.require(ch.h_gnb == c.gnb.height, "GNB_HEIGHT_MISMATCH", "/gnb/height", "must equal /channel/h_gnb");
  ck.finite(c.gnb.position.x, "/gnb/position");
  ck.finite(c.gnb.position.y, "/gnb/position");

  std::int64_t control_every = 0;
  std::int64_t channel_every = 0;
  ck.require(k.control_period > 0.0 && Checker::divides(c.dt_sim, k.control_period, &control_every),
             "DT_NOT_DIVISOR", "/controller/control_period", "must be a positive multiple of dt_sim");
  ck.require(ch.update_period > 0.0 && Checker::divides(c.dt_sim, ch.update_period, &channel_every),
             "DT_NOT_DIVISOR", "/channel/update_period", "must be a positive multiple of dt_sim");

  const link::LinkParams l = link::with_defaults(c.link);
  ck.require(l.mcs_count >= 1, "LINK_RANGE", "/link/mcs_count", "must be >= 1");
  bool eff_ok = static_cast<int>(l.eff.size()) == l.mcs_count && !l.eff.empty() && l.eff.front() > 0.0;
  for (std::size_t i = 1; eff_ok && i < l.eff.size(); ++i) eff_ok = l.eff[i] > l.eff[i - 1];
  for (double e : l.eff) ck.finite(e, "/link/eff");
  ck.require(eff_ok, "LINK_RANGE", "/link/eff", "needs mcs_count positive, strictly increasing entries");
  for (double x : {l.gamma0, l.gamma_step, l.k_slope, l.target_bler, l.bw_ue, l.harq_rtt, l.rlc_rtt,
                   l.core_latency, l.mcs_window}) {
    ck.finite(x, "/link");
  }
  ck.require(l.gamma_step > 0.0, "LINK_RANGE", "/link/gamma_step", "thresholds must increase with MCS");
  ck.require(l.k_slope > 0.0, "LINK_RANGE", "/link/k_slope", "must be > 0");
  ck.require(l.target_bler > 0.0 && l.target_bler < 1.0, "LINK_RANGE", "/link/target_bler", "must lie in (0, 1)");
  ck.require(l.bw_ue > 0.0, "LINK_RANGE", "/link/bw_ue", "must be > 0");
  ck.require(l.harq_rtt >= 0.0 && l.rlc_rtt >= 0.0 && l.core_latency >= 0.0, "LINK_RANGE", "/link",
             "round-trip times and core latency must be >= 0");
  ck.require(l.max_harq >= 1 && l.max_rlc >= 1, "LINK_RANGE", "/link", "max_harq and max_rlc must be >= 1");
  ck.require(l.packet_bytes > 0, "LINK_RANGE", "/link/packet_bytes", "must be > 0");
  ck.require(l.mcs_window >= 0.0, "LINK_RANGE", "/link/mcs_window", "must be >= 0");

  ck.require(c.bus.listen_port >= 0 && c.bus.listen_port <= 65535, "BUS_RANGE", "/bus/listen_port",
             "must be a TCP port");
  ck.require(c.bus.max_clients >= static_cast<int>(c.vehicles.size()) + 3, "BUS_RANGE", "/bus/max_clients",
             "must cover every node plus orchestrator and metrics clients");

  if (!ck.out.empty()) throw ValidationError(std::move(ck.out));

  ValidatedScenario v{c, Polyline(c.path), {}, 0, 0, control_every, channel_every};
  v.config.link = l;
  for (const auto& ring : c.buildings) v.buildings.emplace_back(ring);
  v.dt_ns = std::llround(c.dt_sim * 1e9);
  v.steps = static_cast<std::int64_t>(std::ceil(c.duration / c.dt_sim - 1e-9));
  return v;
}

}  // namespace platoonsim::scenario
