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

#include "ipmo/detection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ipmo/errors.hpp"

namespace ipmo {

void DetectionConfig::validate() const {
  if (min_pixels_base < 1 || !(reference_scale > 0) || !(ev_accept > 0) || !(ev_fast_track > 0) ||
      !(cone_ratio_threshold > 0) || !(track_gate > 0) || !(crop_distance > 0) || birdview_width < 2 ||
      white_run_min < 1) {
    throw ConfigError("detection config: all thresholds must be positive");
  }
  if (!(size_change_max > 0.0 && size_change_max <= 1.0)) {
    throw ConfigError("detection config: size_change_max must lie in (0, 1]");
  }
  if (confirm_frames < 1) throw ConfigError("detection config: confirm_frames must be >= 1");
}

std::string_view to_string(ObstacleKind k) { return k == ObstacleKind::duck ? "duck" : "cone"; }

ObstacleKind obstacle_kind_from_string(std::string_view name) {
  if (name == "duck") return ObstacleKind::duck;
  if (name == "cone") return ObstacleKind::cone;
  throw ConfigError("unknown obstacle class '" + std::string(name) + "'");
}

int min_pixel_threshold(const DetectionConfig& cfg, const BirdviewMapping& m) {
  const double ratio = m.scale / cfg.reference_scale;
  const double scaled = cfg.min_pixels_base * ratio * ratio;
  return std::max(1, static_cast<int>(std::ceil(scaled - 1e-9)));
}

double eigen_ratio(const Region& region) {
  return (region.lambda1 + kRatioEpsilon) / (region.lambda2 + kRatioEpsilon);
}

OrangeDecision classify_orange(const Region& region, const DetectionConfig& cfg) {
  return eigen_ratio(region) > cfg.cone_ratio_threshold ? OrangeDecision::cone : OrangeDecision::rejected_stop_line;
}

YellowDecision classify_yellow(const Region& region, const DetectionConfig& cfg) {
  if (!(region.lambda1 > cfg.ev_accept)) return YellowDecision::rejected;
  return region.lambda1 > cfg.ev_fast_track ? YellowDecision::strong : YellowDecision::weak;
}

double calibrate_cone_ratio(std::span<const double> cone_ratios, std::span<const double> stop_line_ratios) {
  if (cone_ratios.empty() || stop_line_ratios.empty()) {
    throw ConfigError("calibrate_cone_ratio: need at least one cone and one stop-line sample");
  }
  const double cone_min = *std::min_element(cone_ratios.begin(), cone_ratios.end());
  const double stop_max = *std::max_element(stop_line_ratios.begin(), stop_line_ratios.end());
  if (!(cone_min > stop_max)) {
    throw ConfigError("calibrate_cone_ratio: cone and stop-line ratios overlap (" + std::to_string(cone_min) +
                      " <= " + std::to_string(stop_max) + ")");
  }
  return std::sqrt(cone_min * stop_max);
}

ObstaclePose obstacle_pose(const std::array<PixelCoord, 4>& quad, const BirdviewMapping& m) {
  const PixelCoord& bottom_right = quad[2];
  const PixelCoord& bottom_left = quad[3];
  const PixelCoord mid{0.5 * (bottom_left.u + bottom_right.u), 0.5 * (bottom_left.v + bottom_right.v)};
  const GroundPoint position = m.bird_to_ground(mid);
  const GroundPoint corner = m.bird_to_ground(bottom_right);
  return {position, std::hypot(corner.x - position.x, corner.y - position.y)};
}

ObstaclePose obstacle_pose(const Region& region, const BirdviewMapping& m) { return obstacle_pose(region.quad, m); }

PixelCoord robot_anchor(const BirdviewMapping& m) {
  const PixelCoord p = m.ground_to_bird({0.0, 0.0});
  return {std::clamp(p.u, 0.0, m.out_width - 1.0), std::clamp(p.v, 0.0, m.out_height - 1.0)};
}

namespace {

bool line_crosses_white(const BinaryMask& white, PixelCoord from, PixelCoord to, int white_run_min) {
  const double du = to.u - from.u;
  const double dv = to.v - from.v;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(du), std::abs(dv)))));
  int run = 0;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const int u = static_cast<int>(std::lround(from.u + t * du));
    const int v = static_cast<int>(std::lround(from.v + t * dv));
    if (white.contains(u, v) && white(u, v)) {
      if (++run >= white_run_min) return true;
    } else {
      run = 0;
    }
  }
  return false;
}

}  // namespace

bool lane_boundary_check(const BinaryMask& white_mask, PixelCoord robot_anchor, PixelCoord obstacle_px,
                         double lateral_offset_px, int white_run_min) {
  for (const double offset : {0.0, -lateral_offset_px, lateral_offset_px}) {
    const PixelCoord end{obstacle_px.u + offset, obstacle_px.v};
    if (line_crosses_white(white_mask, robot_anchor, end, white_run_min)) return false;
  }
  return true;
}

}  // namespace ipmo
