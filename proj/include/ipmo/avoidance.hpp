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

#include <span>
#include <vector>

#include "ipmo/detection.hpp"

namespace ipmo {

// Robot pose relative to the lane: d is the signed lateral offset from the
// lane middle (left positive), theta the heading angle used to rotate
// robot-frame points into the lane frame.
struct LanePose {
  double d = 0.0;
  double theta = 0.0;
};

struct GatingBox {
  double length = 0.6;      // m ahead of the camera
  double half_width = 0.12; // m either side of the robot axis
};

struct AvoidanceConfig {
  double lane_width = 0.23;
  double robot_width = 0.13;
  double safety_margin = 0.02;
  GatingBox box;
  double cruise_speed = 0.2;  // m/s
  // Stop for every gated obstacle instead of trying to pass it.
  bool strict_stop = true;

  void validate() const;
};

struct AvoidanceCommand {
  double d_ref = 0.0;  // m, target offset from the lane middle
  double v_ref = 0.0;  // m/s
  bool active = false;

  friend bool operator==(const AvoidanceCommand&, const AvoidanceCommand&) = default;
};

// In-lane obstacles with 0 < x <= length and |y| <= half_width.
std::vector<Obstacle> gate_obstacles(std::span<const Obstacle> obstacles, const GatingBox& box);

struct LanePoint {
  double s = 0.0;  // along the lane
  double e = 0.0;  // signed lateral distance from the lane middle
};

// Rotates (x, y) by -theta and shifts by (0, d). Throws InvalidPose for
// |theta| >= pi/2 or non-finite input.
LanePoint to_lane_frame(GroundPoint p, const LanePose& pose);

// Free corridor next to one obstacle in the lane frame.
struct Corridor {
  double width = 0.0;   // m
  double centre = 0.0;  // lateral position of the corridor midpoint
};

// Wider of the two corridors between the obstacle's edges (e -+ radius) and
// the lane boundaries at +-lane_width/2; ties choose the right side.
Corridor widest_corridor(double e_obstacle, double radius, double lane_width);

// Reaction for one detection frame:
//   nothing gated                   -> inactive, cruise speed
//   several gated / strict_stop     -> emergency stop
//   one gated and a corridor wide enough for robot_width + safety_margin
//                                   -> d_ref at the corridor centre (clamped
//                                      to |d_ref| <= lane_width/2 - robot_width/2)
//   otherwise, or on InvalidPose    -> emergency stop
AvoidanceCommand plan(std::span<const Obstacle> obstacles, const LanePose& pose, const AvoidanceConfig& cfg);

}  // namespace ipmo
