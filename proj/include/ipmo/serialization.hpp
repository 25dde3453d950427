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

#pragma once

#include <array>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ipmo/avoidance.hpp"
#include "ipmo/detection.hpp"
#include "ipmo/synth.hpp"

namespace ipmo {

using Json = nlohmann::json;

// Seven-number pose encoding of one obstacle: position (x, y, z) with z the
// radius, negative when a white line separates the robot from the obstacle;
// the four orientation slots carry the bird-view box (u_min, v_min, u_max,
// v_max).
struct PoseEncoding {
  std::array<double, 3> position{};
  std::array<double, 4> orientation{};
};

PoseEncoding encode_pose(const Obstacle& o);
Obstacle decode_pose(const PoseEncoding& p, ObstacleKind kind = ObstacleKind::duck);

// Everything emitted for one processed frame.
struct FrameRecord {
  long frame_index = 0;
  double timestamp = 0.0;
  std::vector<Obstacle> obstacles;
  std::optional<AvoidanceCommand> command;
};

struct TruthFrame {
  long frame_index = 0;
  std::vector<synth::ExpectedObstacle> obstacles;
};

// {x_m, y_m, z_m, quad_px, frame_index, timestamp, class}
Json obstacle_to_json(const Obstacle& o, long frame_index, double timestamp);
Obstacle obstacle_from_json(const Json& j);

// {d_ref_m, v_ref_mps, active}
Json command_to_json(const AvoidanceCommand& c);
AvoidanceCommand command_from_json(const Json& j);

Json frame_record_to_json(const FrameRecord& r);
FrameRecord frame_record_from_json(const Json& j);

Json truth_frame_to_json(const TruthFrame& t);
TruthFrame truth_frame_from_json(const Json& j);

}  // namespace ipmo
