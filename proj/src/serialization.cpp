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

#include <cmath>
#include <string>

#include "ipmo/errors.hpp"

namespace ipmo {

namespace {

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

PoseEncoding encode_pose(const Obstacle& o) {
  const double r = std::abs(o.radius);
  return {{o.position.x, o.position.y, o.in_lane ? r : -r}, {o.quad[0].u, o.quad[0].v, o.quad[2].u, o.quad[2].v}};
}

Obstacle decode_pose(const PoseEncoding& p, ObstacleKind kind) {
  Obstacle o;
  o.position = {p.position[0], p.position[1]};
  o.radius = std::abs(p.position[2]);
  o.in_lane = !(p.position[2] < 0.0);
  o.kind = kind;
  const auto& b = p.orientation;
  o.quad = {{{b[0], b[1]}, {b[2], b[1]}, {b[2], b[3]}, {b[0], b[3]}}};
  return o;
}

Json obstacle_to_json(const Obstacle& o, long frame_index, double timestamp) {
  const PoseEncoding pose = encode_pose(o);
  Json quad = Json::array();
  for (const auto& c : o.quad) quad.push_back({c.u, c.v});
  return {{"x_m", pose.position[0]},
          {"y_m", pose.position[1]},
          {"z_m", pose.position[2]},
          {"quad_px", quad},
          {"frame_index", frame_index},
          {"timestamp", timestamp},
          {"class", std::string(to_string(o.kind))}};
}

Obstacle obstacle_from_json(const Json& j) {
  Obstacle o;
  o.position = {require<double>(j, "x_m"), require<double>(j, "y_m")};
  const double z = require<double>(j, "z_m");
  o.radius = std::abs(z);
  o.in_lane = !(z < 0.0);
  o.kind = obstacle_kind_from_string(j.value("class", std::string("duck")));
  const auto quad = require<std::vector<std::array<double, 2>>>(j, "quad_px");
  if (quad.size() != 4) throw ConfigError("quad_px must hold four corners");
  for (int i = 0; i < 4; ++i) o.quad[i] = {quad[i][0], quad[i][1]};
  return o;
}

Json command_to_json(const AvoidanceCommand& c) {
  return {{"d_ref_m", c.d_ref}, {"v_ref_mps", c.v_ref}, {"active", c.active}};
}

AvoidanceCommand command_from_json(const Json& j) {
  return {require<double>(j, "d_ref_m"), require<double>(j, "v_ref_mps"), require<bool>(j, "active")};
}

Json frame_record_to_json(const FrameRecord& r) {
  Json obstacles = Json::array();
  for (const auto& o : r.obstacles) obstacles.push_back(obstacle_to_json(o, r.frame_index, r.timestamp));
  Json j = {{"frame_index", r.frame_index}, {"timestamp", r.timestamp}, {"obstacles", obstacles}};
  if (r.command) j["command"] = command_to_json(*r.command);
  return j;
}

FrameRecord frame_record_from_json(const Json& j) {
  FrameRecord r;
  r.frame_index = require<long>(j, "frame_index");
  r.timestamp = j.value("timestamp", 0.0);
  for (const auto& o : require<Json>(j, "obstacles")) r.obstacles.push_back(obstacle_from_json(o));
  if (j.contains("command")) r.command = command_from_json(j.at("command"));
  return r;
}

Json truth_frame_to_json(const TruthFrame& t) {
  Json obstacles = Json::array();
  for (const auto& e : t.obstacles) {
    obstacles.push_back({{"class", std::string(to_string(e.kind))},
                         {"x_m", e.position.x},
                         {"y_m", e.position.y},
                         {"radius_m", e.radius},
                         {"in_lane", e.in_lane}});
  }
  return {{"frame_index", t.frame_index}, {"obstacles", obstacles}};
}

TruthFrame truth_frame_from_json(const Json& j) {
  TruthFrame t;
  t.frame_index = require<long>(j, "frame_index");
  for (const auto& o : require<Json>(j, "obstacles")) {
    synth::ExpectedObstacle e;
    e.kind = obstacle_kind_from_string(require<std::string>(o, "class"));
    e.position = {require<double>(o, "x_m"), require<double>(o, "y_m")};
    e.radius = require<double>(o, "radius_m");
    e.in_lane = require<bool>(o, "in_lane");
    t.obstacles.push_back(e);
  }
  return t;
}

}  // namespace ipmo
