// Copyright 2026 The ipmo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipmo/avoidance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ipmo/errors.hpp"

namespace ipmo {
namespace {

Obstacle at(double x, double y, double r = 0.03, bool in_lane = true) {
  Obstacle o;
  o.position = {x, y};
  o.radius = r;
  o.in_lane = in_lane;
  return o;
}

AvoidanceConfig permissive() {
  AvoidanceConfig c;
  c.strict_stop = false;
  return c;
}

TEST(Gate, EmptyInput) { EXPECT_TRUE(gate_obstacles({}, GatingBox{}).empty()); }

TEST(Gate, KeepsInsideBox) {
  const std::vector<Obstacle> obs{at(0.4, 0.0)};
  EXPECT_EQ(gate_obstacles(obs, {1.0, 0.3}).size(), 1u);
}

TEST(Gate, DropsOutOfLane) {
  const std::vector<Obstacle> obs{at(0.4, 0.0, 0.03, false)};
  EXPECT_TRUE(gate_obstacles(obs, {1.0, 0.3}).empty());
}

TEST(Gate, BoxEdges) {
  const std::vector<Obstacle> obs{at(1.0, 0.0), at(1.0001, 0.0), at(0.0, 0.0), at(0.5, 0.3), at(0.5, -0.3001)};
  const auto kept = gate_obstacles(obs, {1.0, 0.3});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].position.x, 1.0);
  EXPECT_EQ(kept[1].position.y, 0.3);
}

TEST(LaneFrame, IdentityPose) {
  const LanePoint p = to_lane_frame({0.5, -0.02}, {});
  EXPECT_EQ(p.s, 0.5);
  EXPECT_EQ(p.e, -0.02);
}

TEST(LaneFrame, PureOffset) {
  const LanePoint p = to_lane_frame({0.5, 0.02}, {0.05, 0.0});
  EXPECT_EQ(p.s, 0.5);
  EXPECT_NEAR(p.e, 0.07, 1e-15);
}

TEST(LaneFrame, MatchesRotationMatrix) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> th(-1.5, 1.5), d(-0.2, 0.2), xy(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const LanePose pose{d(rng), th(rng)};
    const GroundPoint g{xy(rng), xy(rng)};
    Eigen::Matrix2d r;
    r << std::cos(-pose.theta), -std::sin(-pose.theta), std::sin(-pose.theta), std::cos(-pose.theta);
    const Eigen::Vector2d q = r * Eigen::Vector2d(g.x, g.y) + Eigen::Vector2d(0.0, pose.d);
    const LanePoint p = to_lane_frame(g, pose);
    ASSERT_NEAR(p.s, q.x(), 1e-12);
    ASSERT_NEAR(p.e, q.y(), 1e-12);
  }
}

TEST(LaneFrame, InvalidHeadingThrows) {
  EXPECT_THROW(to_lane_frame({1, 0}, {0.0, std::numbers::pi / 2}), InvalidPose);
  EXPECT_THROW(to_lane_frame({1, 0}, {0.0, -2.0}), InvalidPose);
}

TEST(Corridor, WiderSideWinsTiesGoRight) {
  const Corridor c = widest_corridor(0.0, 0.04, 0.46);
  EXPECT_NEAR(c.width, 0.19, 1e-12);
  EXPECT_LT(c.centre, 0.0);
  const Corridor l = widest_corridor(-0.05, 0.02, 0.46);
  EXPECT_NEAR(l.width, 0.23 - (-0.05 + 0.02), 1e-12);
  EXPECT_GT(l.centre, 0.0);
}

TEST(Plan, NothingGatedCruises) {
  const AvoidanceCommand c = plan({}, {}, AvoidanceConfig{});
  EXPECT_FALSE(c.active);
  EXPECT_EQ(c.v_ref, AvoidanceConfig{}.cruise_speed);
}

TEST(Plan, TwoObstaclesStop) {
  const std::vector<Obstacle> obs{at(0.3, 0.0), at(0.5, 0.05)};
  const AvoidanceCommand c = plan(obs, {}, permissive());
  EXPECT_TRUE(c.active);
  EXPECT_EQ(c.v_ref, 0.0);
}

TEST(Plan, StrictStopIsTheDefault) {
  EXPECT_TRUE(AvoidanceConfig{}.strict_stop);
  const std::vector<Obstacle> obs{at(0.3, 0.0, 0.001)};
  AvoidanceConfig cfg;
  cfg.lane_width = 2.0;
  const AvoidanceCommand c = plan(obs, {}, cfg);
  EXPECT_TRUE(c.active);
  EXPECT_EQ(c.v_ref, 0.0);
}

TEST(Plan, GapArithmetic) {
  AvoidanceConfig cfg = permissive();
  cfg.lane_width = 0.46;
  cfg.robot_width = 0.13;
  cfg.safety_margin = 0.05;
  const std::vector<Obstacle> obs{at(0.4, 0.0, 0.04)};
  const AvoidanceCommand pass = plan(obs, {}, cfg);
  EXPECT_TRUE(pass.active);
  EXPECT_EQ(pass.v_ref, cfg.cruise_speed);
  // Corridor from the obstacle's near edge (-0.04) to the lane edge (-0.23).
  EXPECT_NEAR(pass.d_ref, -0.135, 1e-12);
  cfg.lane_width = 0.40;
  const AvoidanceCommand stop = plan(obs, {}, cfg);
  EXPECT_TRUE(stop.active);
  EXPECT_EQ(stop.v_ref, 0.0);
}

TEST(Plan, DrefIsClamped) {
  AvoidanceConfig cfg = permissive();
  cfg.lane_width = 0.6;
  cfg.robot_width = 0.1;
  cfg.safety_margin = 0.0;
  cfg.box.half_width = 1.0;
  // Obstacle far outside the lane: the raw corridor midpoint would sit at
  // -0.2975, past the robot's half-width limit.
  const std::vector<Obstacle> obs{at(0.4, -0.9, 0.005)};
  const AvoidanceCommand c = plan(obs, {}, cfg);
  EXPECT_EQ(c.v_ref, cfg.cruise_speed);
  EXPECT_NEAR(c.d_ref, -0.25, 1e-12);
}

TEST(Plan, InvalidPoseStops) {
  const std::vector<Obstacle> obs{at(0.4, 0.0, 0.01)};
  const AvoidanceCommand c = plan(obs, {0.0, 2.0}, permissive());
  EXPECT_TRUE(c.active);
  EXPECT_EQ(c.v_ref, 0.0);
}

TEST(Plan, IdentityPoseEqualsRobotFrame) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> x(0.05, 0.6), y(-0.12, 0.12), r(0.0, 0.08);
  const AvoidanceConfig cfg = permissive();
  for (int i = 0; i < 500; ++i) {
    const Obstacle o = at(x(rng), y(rng), r(rng));
    const std::vector<Obstacle> obs{o};
    const Corridor corr = widest_corridor(o.position.y, o.radius, cfg.lane_width);
    const AvoidanceCommand c = plan(obs, {}, cfg);
    if (corr.width >= cfg.robot_width + cfg.safety_margin) {
      const double lim = 0.5 * (cfg.lane_width - cfg.robot_width);
      ASSERT_EQ(c, (AvoidanceCommand{std::clamp(corr.centre, -lim, lim), cfg.cruise_speed, true}));
    } else {
      ASSERT_EQ(c, (AvoidanceCommand{0.0, 0.0, true}));
    }
  }
}

TEST(AvoidanceConfig, Validate) {
  AvoidanceConfig c;
  EXPECT_NO_THROW(c.validate());
  c.robot_width = c.lane_width;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.safety_margin = -0.01;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.box.length = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace ipmo
