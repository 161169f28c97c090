#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "platoonsim/channel.hpp"
#include "platoonsim/control.hpp"
#include "platoonsim/geometry.hpp"
#include "platoonsim/link.hpp"
#include "platoonsim/mobility.hpp"

namespace platoonsim::scenario {

struct BusParams {
  int listen_port = 1883;
  int max_clients = 16;
  bool inprocess = true;

  bool operator==(const BusParams&) const = default;
};

struct GnbConfig {
  Vec2 position;
  double height = 10.0;

  bool operator==(const GnbConfig&) const = default;
};

struct ScenarioConfig {
  double duration = 100.0;
  double dt_sim = 0.01;
  std::uint64_t seed = 0;
  std::vector<Vec2> path;
  std::vector<std::vector<Vec2>> buildings;
  GnbConfig gnb;
  std::vector<mobility::VehicleSpec> vehicles;
  mobility::LeaderProfile leader;
  control::ControllerParams controller;
  control::FallbackParams fallback;
  channel::ChannelParams channel;
  link::LinkParams link;
  BusParams bus;
  int max_nodes = 128;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Malformed document. Line and column are 1-based.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed document that does not follow the schema. `path` is a JSON
/// pointer to the offending element.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Violation {
  std::string code;   // e.g. PATH_NOT_CLOSED
  std::string field;  // JSON pointer
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }
  bool has(const std::string& code) const;

 private:
  std::vector<Violation> violations_;
};

/// Parses a JSON scenario document (comments allowed). Unknown keys are
/// rejected; omitted optional keys take their defaults.
ScenarioConfig parse_scenario(const std::string& text);

/// Canonical JSON form of a config with every field spelled out.
std::string serialize_scenario(const ScenarioConfig& config);

ScenarioConfig load_scenario_file(const std::string& path);

/// Immutable, checked scenario with derived quantities.
struct ValidatedScenario {
  ScenarioConfig config;
  Polyline path;
  std::vector<Footprint> buildings;
  std::int64_t dt_ns = 0;
  std::int64_t steps = 0;          // ceil(duration / dt_sim)
  std::int64_t control_every = 0;  // steps per control period
  std::int64_t channel_every = 0;  // steps per channel update
  double path_length() const { return path.length(); }
};

ValidatedScenario validate(const ScenarioConfig& config);

}  // namespace platoonsim::scenario
