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

#include "ipmo/serialization.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ipmo/errors.hpp"

namespace ipmo {
namespace {

Obstacle random_obstacle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(0.0, 2.0), y(-0.5, 0.5), r(1e-4, 0.1), px(0.0, 640.0);
  std::bernoulli_distribution coin(0.5);
  Obstacle o;
  o.position = {x(rng), y(rng)};
  o.radius = r(rng);
  o.in_lane = coin(rng);
  o.kind = coin(rng) ? ObstacleKind::duck : ObstacleKind::cone;
  double u0 = px(rng), u1 = px(rng), v0 = px(rng), v1 = px(rng);
  if (u0 > u1) std::swap(u0, u1);
  if (v0 > v1) std::swap(v0, v1);
  o.quad = {{{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}}};
  return o;
}

void expect_same(const Obstacle& a, const Obstacle& b) {
  EXPECT_EQ(a.position.x, b.position.x);
  EXPECT_EQ(a.position.y, b.position.y);
  EXPECT_EQ(a.radius, b.radius);
  EXPECT_EQ(a.in_lane, b.in_lane);
  EXPECT_EQ(a.kind, b.kind);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(a.quad[i].u, b.quad[i].u);
    EXPECT_EQ(a.quad[i].v, b.quad[i].v);
  }
}

TEST(PoseEncoding, ZSignCarriesLaneFlag) {
  Obstacle o;
  o.position = {0.4, -0.1};
  o.radius = 0.03;
  o.in_lane = true;
  EXPECT_EQ(encode_pose(o).position[2], 0.03);
  o.in_lane = false;
  EXPECT_EQ(encode_pose(o).position[2], -0.03);
}

TEST(PoseEncoding, OrientationHoldsBoundingBox) {
  Obstacle o;
  o.radius = 0.02;
  o.quad = {{{10, 20}, {30, 20}, {30, 45}, {10, 45}}};
  const PoseEncoding p = encode_pose(o);
  EXPECT_EQ(p.orientation, (std::array<double, 4>{10, 20, 30, 45}));
}

TEST(PoseEncoding, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Obstacle o = random_obstacle(rng);
    const PoseEncoding p = encode_pose(o);
    EXPECT_EQ(p.position[2] < 0.0, !o.in_lane);
    EXPECT_EQ(std::abs(p.position[2]), o.radius);
    expect_same(decode_pose(p, o.kind), o);
  }
}

TEST(ObstacleJson, Fields) {
  Obstacle o;
  o.position = {0.5, 0.01};
  o.radius = 0.02;
  o.in_lane = false;
  o.kind = ObstacleKind::cone;
  const Json j = obstacle_to_json(o, 7, 0.7);
  EXPECT_EQ(j.at("x_m"), 0.5);
  EXPECT_EQ(j.at("y_m"), 0.01);
  EXPECT_EQ(j.at("z_m"), -0.02);
  EXPECT_EQ(j.at("frame_index"), 7);
  EXPECT_EQ(j.at("timestamp"), 0.7);
  EXPECT_EQ(j.at("class"), "cone");
  EXPECT_EQ(j.at("quad_px").size(), 4u);
}

TEST(ObstacleJson, RoundTripThroughText) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const Obstacle o = random_obstacle(rng);
    const Json j = Json::parse(obstacle_to_json(o, i, 0.1 * i).dump());
    expect_same(obstacle_from_json(j), o);
  }
}

TEST(ObstacleJson, MalformedInputThrows) {
  EXPECT_THROW(obstacle_from_json(Json{{"x_m", 1.0}}), ConfigError);
  Json j = obstacle_to_json(Obstacle{}, 0, 0.0);
  j["quad_px"] = Json::array({Json::array({1, 2})});
  EXPECT_THROW(obstacle_from_json(j), ConfigError);
  j = obstacle_to_json(Obstacle{}, 0, 0.0);
  j["class"] = "goose";
  EXPECT_THROW(obstacle_from_json(j), ConfigError);
}

TEST(CommandJson, RoundTrip) {
  const AvoidanceCommand c{-0.0625, 0.2, true};
  const Json j = command_to_json(c);
  EXPECT_EQ(j.at("d_ref_m"), -0.0625);
  EXPECT_EQ(j.at("v_ref_mps"), 0.2);
  EXPECT_EQ(j.at("active"), true);
  EXPECT_EQ(command_from_json(Json::parse(j.dump())), c);
}

TEST(FrameRecordJson, RoundTrip) {
  std::mt19937_64 rng(3);
  FrameRecord r;
  r.frame_index = 42;
  r.timestamp = 4.2;
  for (int i = 0; i < 3; ++i) r.obstacles.push_back(random_obstacle(rng));
  r.command = AvoidanceCommand{0.01, 0.0, true};
  const FrameRecord back = frame_record_from_json(Json::parse(frame_record_to_json(r).dump()));
  EXPECT_EQ(back.frame_index, 42);
  EXPECT_EQ(back.timestamp, 4.2);
  ASSERT_EQ(back.obstacles.size(), 3u);
  for (int i = 0; i < 3; ++i) expect_same(back.obstacles[i], r.obstacles[i]);
  EXPECT_EQ(back.command, r.command);

  r.command.reset();
  EXPECT_FALSE(frame_record_from_json(frame_record_to_json(r)).command.has_value());
}

TEST(TruthFrameJson, RoundTrip) {
  TruthFrame t;
  t.frame_index = 3;
  t.obstacles.push_back({ObstacleKind::cone, {0.7, -0.19}, 0.0225, false});
  t.obstacles.push_back({ObstacleKind::duck, {0.5, 0.0}, 0.0175, true});
  const TruthFrame back = truth_frame_from_json(Json::parse(truth_frame_to_json(t).dump()));
  EXPECT_EQ(back.frame_index, 3);
  ASSERT_EQ(back.obstacles.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(back.obstacles[i].kind, t.obstacles[i].kind);
    EXPECT_EQ(back.obstacles[i].position.x, t.obstacles[i].position.x);
    EXPECT_EQ(back.obstacles[i].position.y, t.obstacles[i].position.y);
    EXPECT_EQ(back.obstacles[i].radius, t.obstacles[i].radius);
    EXPECT_EQ(back.obstacles[i].in_lane, t.obstacles[i].in_lane);
  }
}

}  // namespace
}  // namespace ipmo
