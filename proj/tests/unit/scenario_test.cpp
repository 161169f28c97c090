#include <gtest/gtest.h>

#include <string>

#include "platoonsim/scenario.hpp"

namespace sc = platoonsim::scenario;

namespace {

const char* kMinimal = R"({
  // Three vehicles on a 100 m square.
  "path": [[0, 0], [100, 0], [100, 100], [0, 100], [0, 0]],
  "gnb": {"position": [50, 50]},
  "vehicles": [
    {"id": "veh1", "initial_s": 20},
    {"id": "veh2", "initial_s": 11},
    {"id": "veh3", "initial_s": 2}
  ]
})";

std::string with_vehicles(int n, int max_nodes) {
  std::string doc = R"({"path": [[0,0],[1000,0],[1000,1000],[0,1000],[0,0]], "gnb": {"position": [5, 5]}, )";
  doc += "\"max_nodes\": " + std::to_string(max_nodes) + ", \"vehicles\": [";
  for (int i = 0; i < n; ++i) {
    if (i) doc += ",";
    doc += R"({"id": "v)" + std::to_string(i) + R"(", "initial_s": )" + std::to_string(10 * i) + "}";
  }
  return doc + "]}";
}

sc::ScenarioConfig minimal() { return sc::parse_scenario(kMinimal); }

}  // namespace

TEST(ScenarioParse, MinimalDocumentTakesDefaults) {
  const auto c = minimal();
  EXPECT_DOUBLE_EQ(c.dt_sim, 0.01);
  EXPECT_DOUBLE_EQ(c.duration, 100.0);
  EXPECT_EQ(c.vehicles.size(), 3u);
  EXPECT_EQ(c.vehicles[1].id, "veh2");
  EXPECT_DOUBLE_EQ(c.controller.gap_des, 5.0);
  EXPECT_DOUBLE_EQ(c.fallback.delay_high, 0.3);
  EXPECT_DOUBLE_EQ(c.channel.n0, -95.0);
}

TEST(ScenarioParse, NodeBudgetIsASchemaError) {
  try {
    sc::parse_scenario(with_vehicles(130, 128));
    FAIL() << "expected SchemaError";
  } catch (const sc::SchemaError& e) {
    EXPECT_EQ(e.path(), "/vehicles");
    EXPECT_NE(std::string(e.what()).find("max_nodes"), std::string::npos);
  }
  EXPECT_NO_THROW(sc::parse_scenario(with_vehicles(127, 128)));
}

TEST(ScenarioParse, UnknownKeysAreRejected) {
  std::string doc = kMinimal;
  doc.insert(doc.rfind('}'), R"(, "colour": "red")");
  EXPECT_THROW(sc::parse_scenario(doc), sc::SchemaError);
}

TEST(ScenarioParse, SyntaxErrorCarriesPosition) {
  try {
    sc::parse_scenario("{\n  \"duration\": 10,\n  \"path\": [,]\n}");
    FAIL() << "expected SyntaxError";
  } catch (const sc::SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(ScenarioParse, WrongTypeNamesThePointer) {
  std::string doc = kMinimal;
  doc.insert(doc.rfind('}'), R"(, "duration": "long")");
  try {
    sc::parse_scenario(doc);
    FAIL();
  } catch (const sc::SchemaError& e) {
    EXPECT_EQ(e.path(), "/duration");
  }
}

TEST(ScenarioParse, SerializeRoundTrip) {
  auto c = minimal();
  c.seed = 12345678901234567ull;
  c.leader.phase = 3.5;
  c.link.mcs_window = 0.25;
  c.fallback.enabled = false;
  const auto again = sc::parse_scenario(sc::serialize_scenario(c));
  EXPECT_EQ(again, c);
  EXPECT_EQ(sc::serialize_scenario(again), sc::serialize_scenario(c));
}

TEST(ScenarioValidate, SquareLoopLength) {
  const auto v = sc::validate(minimal());
  EXPECT_DOUBLE_EQ(v.path_length(), 400.0);
  EXPECT_EQ(v.steps, 10000);
  EXPECT_EQ(v.control_every, 10);
  EXPECT_EQ(v.channel_every, 1);
  EXPECT_EQ(v.dt_ns, 10'000'000);
}

TEST(ScenarioValidate, OpenPathIsRejected) {
  auto c = minimal();
  c.path.back() = {0, 1};
  try {
    sc::validate(c);
    FAIL();
  } catch (const sc::ValidationError& e) {
    EXPECT_TRUE(e.has("PATH_NOT_CLOSED"));
  }
}

TEST(ScenarioValidate, CollectsEveryViolation) {
  auto c = minimal();
  c.dt_sim = -1.0;
  c.vehicles[1].id = "veh1";
  c.controller.c1 = 2.0;
  c.buildings.push_back({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
  try {
    sc::validate(c);
    FAIL();
  } catch (const sc::ValidationError& e) {
    EXPECT_TRUE(e.has("DT_RANGE"));
    EXPECT_TRUE(e.has("VEHICLE_ID_DUPLICATE"));
    EXPECT_TRUE(e.has("CONTROLLER_RANGE"));
    EXPECT_TRUE(e.has("POLYGON_NOT_SIMPLE"));
  }
}

TEST(ScenarioValidate, PeriodsMustAlignWithTheStep) {
  auto c = minimal();
  c.dt_sim = 0.03;
  try {
    sc::validate(c);
    FAIL();
  } catch (const sc::ValidationError& e) {
    EXPECT_TRUE(e.has("DT_NOT_DIVISOR"));
  }
}

TEST(ScenarioValidate, VehicleOutsideThePath) {
  auto c = minimal();
  c.vehicles[0].initial_s = 400.0;
  try {
    sc::validate(c);
    FAIL();
  } catch (const sc::ValidationError& e) {
    EXPECT_TRUE(e.has("VEHICLE_POSITION"));
  }
}

TEST(ScenarioValidate, ShippedSampleIsValid) {
  const auto c = sc::load_scenario_file(PLATOONSIM_SCENARIO_DIR "/luxembourg_loop.json");
  const auto v = sc::validate(c);
  EXPECT_EQ(v.config.vehicles.size(), 3u);
  EXPECT_EQ(v.steps, 10000);
}
