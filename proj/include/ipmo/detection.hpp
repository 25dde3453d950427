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
#include <span>
#include <string_view>
#include <vector>

#include "ipmo/colorspace.hpp"
#include "ipmo/geometry.hpp"
#include "ipmo/segmentation.hpp"

namespace ipmo {

// Thresholds for turning bird-view regions into obstacles. Eigenvalue
// thresholds are in bird-view pixels^2 (area-normalised moments).
struct DetectionConfig {
  int min_pixels_base = 30;         // minimum region area at reference_scale
  double reference_scale = 250.0;   // px/m at which min_pixels_base applies
  double ev_accept = 20.0;          // yellow: lambda1 must exceed this
  double ev_fast_track = 100.0;     // yellow: strong above this
  double size_change_max = 0.5;     // relative lambda1 change that demotes a track
  int confirm_frames = 3;           // hits required for weak/changed candidates
  double cone_ratio_threshold = 9.6137;  // calibrated on synth::cone_calibration_set()
  double track_gate = 0.1;          // m
  double crop_distance = 1.7;       // m
  int birdview_width = kDefaultBirdviewWidth;
  int white_run_min = 3;            // px

  // Throws ConfigError on non-positive values, size_change_max outside
  // (0, 1] or confirm_frames < 1.
  void validate() const;
};

enum class ObstacleKind { duck, cone };

std::string_view to_string(ObstacleKind k);
ObstacleKind obstacle_kind_from_string(std::string_view name);

int min_pixel_threshold(const DetectionConfig& cfg, const BirdviewMapping& m);

inline constexpr double kRatioEpsilon = 1e-6;

// (lambda1 + eps) / (lambda2 + eps); finite for collinear regions.
double eigen_ratio(const Region& region);

enum class OrangeDecision { cone, rejected_stop_line };
enum class YellowDecision { strong, weak, rejected };

OrangeDecision classify_orange(const Region& region, const DetectionConfig& cfg);
YellowDecision classify_yellow(const Region& region, const DetectionConfig& cfg);

// Geometric mean of the smallest cone ratio and the largest stop-line ratio,
// i.e. the centre of the separating gap on a log scale. Throws ConfigError
// when either list is empty or the two populations overlap.
double calibrate_cone_ratio(std::span<const double> cone_ratios, std::span<const double> stop_line_ratios);

struct ObstaclePose {
  GroundPoint position;
  double radius = 0.0;
};

// Position is the ground point under the midpoint of the quad's bottom edge,
// radius the ground distance from there to the bottom-right corner.
ObstaclePose obstacle_pose(const std::array<PixelCoord, 4>& quad, const BirdviewMapping& m);
ObstaclePose obstacle_pose(const Region& region, const BirdviewMapping& m);

// Bird-view pixel of the camera ground point, clamped into the raster (in
// practice onto the bottom edge).
PixelCoord robot_anchor(const BirdviewMapping& m);

// Walks three straight search lines from the anchor to the obstacle point
// and to the obstacle point shifted by +-lateral_offset_px. Returns false
// (not in lane) when any line crosses white_run_min consecutive white
// pixels.
bool lane_boundary_check(const BinaryMask& white_mask, PixelCoord robot_anchor, PixelCoord obstacle_px,
                         double lateral_offset_px = 0.0, int white_run_min = 3);

struct Obstacle {
  GroundPoint position;
  double radius = 0.0;
  bool in_lane = true;
  ObstacleKind kind = ObstacleKind::duck;
  std::array<PixelCoord, 4> quad{};  // bird-view pixels
};

}  // namespace ipmo
