#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "platoonsim/geometry.hpp"
#include "platoonsim/mobility.hpp"

namespace ps = platoonsim;
namespace mob = platoonsim::mobility;

namespace {

ps::Polyline square(double side) {
  return ps::Polyline({{0, 0}, {side, 0}, {side, side}, {0, side}, {0, 0}});
}

}  // namespace

TEST(Path, SquareLoopLengthAndPositions) {
  const auto loop = square(100);
  EXPECT_DOUBLE_EQ(loop.length(), 400.0);
  EXPECT_EQ(mob::path_position(loop, 0.0), (ps::Vec2{0, 0}));
  EXPECT_EQ(mob::path_position(loop, 50.0), (ps::Vec2{50, 0}));
  const auto a = mob::path_position(loop, 410.0);
  const auto b = mob::path_position(loop, 10.0);
  EXPECT_DOUBLE_EQ(a.x, b.x);
  EXPECT_DOUBLE_EQ(a.y, b.y);
  EXPECT_EQ(mob::path_position(loop, 150.0), (ps::Vec2{100, 50}));
}

TEST(Path, NegativeArcLengthWraps) {
  const auto loop = square(100);
  EXPECT_EQ(mob::path_position(loop, -10.0), (ps::Vec2{0, 10}));
}

TEST(LeaderProfile, SquareWave) {
  const mob::LeaderProfile p;
  EXPECT_DOUBLE_EQ(mob::leader_target_speed(0.0, p), 25.0);
  EXPECT_DOUBLE_EQ(mob::leader_target_speed(9.99, p), 25.0);
  EXPECT_DOUBLE_EQ(mob::leader_target_speed(10.0, p), 15.0);
  EXPECT_DOUBLE_EQ(mob::leader_target_speed(15.0, p), 15.0);
  EXPECT_DOUBLE_EQ(mob::leader_target_speed(25.0, p), 25.0);
}

TEST(LeaderProfile, PhaseShiftsTheWave) {
  mob::LeaderProfile p;
  p.phase = 16.0;
  EXPECT_DOUBLE_EQ(mob::leader_target_speed(0.0, p), 15.0);
  EXPECT_DOUBLE_EQ(mob::leader_target_speed(4.0, p), 25.0);
}

TEST(StepVehicle, CruiseAdvancesExactly) {
  const mob::VehicleSpec spec;
  const mob::VehicleState s{"v", 0.0, 20.0, 0.0, 0.0, ps::ControlMode::kCacc};
  const auto next = mob::step_vehicle(s, spec, 0.0, 0.01, 400.0);
  EXPECT_DOUBLE_EQ(next.s, 0.2);
  EXPECT_DOUBLE_EQ(next.speed, 20.0);
}

TEST(StepVehicle, ActuationLag) {
  const mob::VehicleSpec spec;  // tau = 0.5
  const mob::VehicleState s{"v", 0.0, 10.0, 0.0, 0.0, ps::ControlMode::kCacc};
  const auto next = mob::step_vehicle(s, spec, 1.0, 0.01, 400.0);
  // accel' = 0 + 0.01 * (1 - 0) / 0.5
  EXPECT_NEAR(next.accel, 0.02, 1e-15);
  EXPECT_DOUBLE_EQ(next.accel_cmd, 1.0);
}

TEST(StepVehicle, NoReversing) {
  const mob::VehicleSpec spec;
  const mob::VehicleState s{"v", 5.0, 0.0, -6.0, -6.0, ps::ControlMode::kCacc};
  const auto next = mob::step_vehicle(s, spec, -6.0, 0.01, 400.0);
  EXPECT_EQ(next.speed, 0.0);
  EXPECT_EQ(next.s, 5.0);
}

TEST(StepVehicle, CommandIsClampedToLimits) {
  mob::VehicleSpec spec;
  spec.tau = 0.01;  // lag of exactly one step
  const mob::VehicleState s{"v", 0.0, 10.0, 0.0, 0.0, ps::ControlMode::kCacc};
  EXPECT_DOUBLE_EQ(mob::step_vehicle(s, spec, 50.0, 0.01, 400.0).accel, spec.max_accel);
  EXPECT_DOUBLE_EQ(mob::step_vehicle(s, spec, -50.0, 0.01, 400.0).accel, -spec.max_decel);
}

TEST(StepVehicle, WrapsAroundTheLoop) {
  const mob::VehicleSpec spec;
  const mob::VehicleState s{"v", 399.9, 20.0, 0.0, 0.0, ps::ControlMode::kCacc};
  const auto next = mob::step_vehicle(s, spec, 0.0, 0.01, 400.0);
  EXPECT_NEAR(next.s, 0.1, 1e-9);
}

TEST(StepVehicle, PropertySpeedNeverNegativeAndStaysOnLoop) {
  oracle::Gen gen(31);
  const mob::VehicleSpec spec;
  for (int i = 0; i < 2000; ++i) {
    mob::VehicleState s{"v", gen.real(0, 400), gen.real(0, 35), gen.real(-6, 2.5), 0.0,
                        ps::ControlMode::kCacc};
    for (int k = 0; k < 50; ++k) {
      s = mob::step_vehicle(s, spec, gen.real(-20, 20), 0.01, 400.0);
      ASSERT_GE(s.speed, 0.0);
      ASSERT_GE(s.s, 0.0);
      ASSERT_LT(s.s, 400.0);
      ASSERT_LE(s.accel, spec.max_accel + 1e-12);
      ASSERT_GE(s.accel, -spec.max_decel - 1e-12);
    }
  }
}

TEST(Gap, PlainAndWrapped) {
  mob::VehicleState front{"a", 109.0}, follower{"b", 100.0};
  EXPECT_DOUBLE_EQ(mob::gap_front(follower, front, 400.0, 4.0), 5.0);
  front.s = 2.0;
  follower.s = 396.0;
  EXPECT_DOUBLE_EQ(mob::gap_front(follower, front, 400.0, 4.0), 2.0);
}

TEST(Gap, EquilibriumPlatoon) {
  std::vector<mob::VehicleState> platoon;
  for (int i = 0; i < 5; ++i) platoon.push_back({"v", 100.0 - 9.0 * i});
  for (std::size_t i = 1; i < platoon.size(); ++i) {
    EXPECT_DOUBLE_EQ(mob::gap_front(platoon[i], platoon[i - 1], 400.0, 4.0), 5.0);
  }
}

TEST(Geometry, SegmentsAndPolygons) {
  using ps::Vec2;
  EXPECT_TRUE(ps::segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_FALSE(ps::segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_TRUE(ps::segments_intersect({0, 0}, {1, 0}, {1, 0}, {1, 1}));  // shared endpoint
  const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_TRUE(ps::is_simple_polygon(sq));
  const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_FALSE(ps::is_simple_polygon(bowtie));
  EXPECT_TRUE(ps::point_in_polygon({0.5, 0.5}, sq));
  EXPECT_TRUE(ps::point_in_polygon({1.0, 0.5}, sq));
  EXPECT_FALSE(ps::point_in_polygon({1.5, 0.5}, sq));
}

TEST(Geometry, WrapIsFlooredModulo) {
  EXPECT_DOUBLE_EQ(ps::wrap(410.0, 400.0), 10.0);
  EXPECT_DOUBLE_EQ(ps::wrap(-10.0, 400.0), 390.0);
  EXPECT_DOUBLE_EQ(ps::wrap(400.0, 400.0), 0.0);
  const double r = ps::wrap(-1e-18, 400.0);
  EXPECT_GE(r, 0.0);
  EXPECT_LT(r, 400.0);
}
