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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ipmo/errors.hpp"

namespace ipmo {

namespace {

AvoidanceCommand emergency_stop() { return {0.0, 0.0, true}; }

}  // namespace

void AvoidanceConfig::validate() const {
  if (!(robot_width > 0.0) || !(lane_width > robot_width)) {
    throw ConfigError("avoidance config: need lane_width > robot_width > 0");
  }
  if (!(safety_margin >= 0.0)) throw ConfigError("avoidance config: safety_margin must be >= 0");
  if (!(box.length > 0.0) || !(box.half_width > 0.0)) {
    throw ConfigError("avoidance config: gating box dimensions must be positive");
  }
  if (!(cruise_speed >= 0.0)) throw ConfigError("avoidance config: cruise_speed must be >= 0");
}

std::vector<Obstacle> gate_obstacles(std::span<const Obstacle> obstacles, const GatingBox& box) {
  std::vector<Obstacle> kept;
  for (const Obstacle& o : obstacles) {
    if (o.in_lane && o.position.x > 0.0 && o.position.x <= box.length && std::abs(o.position.y) <= box.half_width) {
      kept.push_back(o);
    }
  }
  return kept;
}

LanePoint to_lane_frame(GroundPoint p, const LanePose& pose) {
  if (!std::isfinite(pose.theta) || !std::isfinite(pose.d) || std::abs(pose.theta) >= std::numbers::pi / 2) {
    throw InvalidPose("lane pose heading must satisfy |theta| < pi/2");
  }
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  return {c * p.x + s * p.y, -s * p.x + c * p.y + pose.d};
}

Corridor widest_corridor(double e_obstacle, double radius, double lane_width) {
  const double half = 0.5 * lane_width;
  const double near_left = e_obstacle + radius;
  const double near_right = e_obstacle - radius;
  const Corridor left{half - near_left, 0.5 * (near_left + half)};
  const Corridor right{near_right + half, 0.5 * (near_right - half)};
  return left.width > right.width ? left : right;
}

AvoidanceCommand plan(std::span<const Obstacle> obstacles, const LanePose& pose, const AvoidanceConfig& cfg) {
  const std::vector<Obstacle> gated = gate_obstacles(obstacles, cfg.box);
  if (gated.empty()) return {0.0, cfg.cruise_speed, false};
  if (gated.size() > 1 || cfg.strict_stop) return emergency_stop();

  LanePoint lp;
  try {
    lp = to_lane_frame(gated.front().position, pose);
  } catch (const InvalidPose&) {
    return emergency_stop();
  }
  const Corridor corridor = widest_corridor(lp.e, std::abs(gated.front().radius), cfg.lane_width);
  if (!(corridor.width >= cfg.robot_width + cfg.safety_margin)) return emergency_stop();

  const double limit = 0.5 * cfg.lane_width - 0.5 * cfg.robot_width;
  return {std::clamp(corridor.centre, -limit, limit), cfg.cruise_speed, true};
}

}  // namespace ipmo
