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

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ipmo/colorspace.hpp"
#include "ipmo/detection.hpp"
#include "ipmo/geometry.hpp"

namespace ipmo::synth {

using Vec3 = Eigen::Vector3d;

// f in pixels (focal length times pixel density), principal point in pixels.
struct PinholeParams {
  double f = 450.0;
  double cx = 319.5;
  double cy = 239.5;
  int width = 640;
  int height = 480;

  void validate() const;
};

// Camera above the robot-frame origin, tilted down by pitch and turned left
// by yaw. Nadir (pitch = pi/2) is excluded.
struct CameraPose {
  double height_m = 0.1;
  double pitch_rad = 0.2617993877991494;  // 15 degrees
  double yaw_rad = 0.0;

  void validate() const;
};

// Pinhole camera with a known pose, plus the ground homography it induces.
class SynthCamera {
 public:
  // Throws ConfigError when the parameters violate their invariants.
  SynthCamera(const PinholeParams& pinhole, const CameraPose& pose);

  const CameraModel& model() const { return model_; }
  const PinholeParams& pinhole() const { return pinhole_; }
  const CameraPose& pose() const { return pose_; }
  Vec3 centre() const { return {0.0, 0.0, pose_.height_m}; }
  // Columns: camera x (right), y (down), z (optical axis) in world coordinates.
  const Eigen::Matrix3d& world_from_camera() const { return rotation_; }

  // Forward pinhole projection; nullopt for points at or behind the camera.
  std::optional<PixelCoord> project(const Vec3& world) const;
  // World-frame direction of the viewing ray through p (not normalised).
  Vec3 ray(PixelCoord p) const;

 private:
  PinholeParams pinhole_;
  CameraPose pose_;
  Eigen::Matrix3d rotation_;
  CameraModel model_;
};

SynthCamera make_camera(const PinholeParams& pinhole, const CameraPose& pose);

// Flat painted rectangle on the ground: centre, heading of its long side,
// length along the heading, width across it.
struct GroundElement {
  enum class Kind { lane_line, dash, stop_line, patch };

  Kind kind = Kind::patch;
  GroundPoint centre;
  double yaw = 0.0;
  double length = 0.1;
  double width = 0.05;
  Rgb color{200, 200, 200};

  bool contains(GroundPoint p) const;
};

// Vertical billboard facing the camera. Its silhouette narrows linearly
// from footprint_m at the ground to footprint_m * (1 - taper) at height_m.
struct SynthObstacle {
  ObstacleKind kind = ObstacleKind::duck;
  double footprint_m = 0.035;
  double height_m = 0.025;
  GroundPoint position;
  Rgb color{235, 200, 30};
  double taper = 0.5;

  double width_at(double z) const { return footprint_m * (1.0 - taper * z / height_m); }
};

inline constexpr Rgb kDuckYellow{235, 200, 30};
inline constexpr Rgb kConeOrange{240, 110, 20};
inline constexpr Rgb kStopLineRed{225, 75, 30};
inline constexpr Rgb kLaneWhite{240, 240, 240};
inline constexpr Rgb kLaneYellow{240, 205, 20};

SynthObstacle make_duck(GroundPoint position, double footprint_m = 0.035, double height_m = 0.025);
SynthObstacle make_cone(GroundPoint position, double footprint_m = 0.045, double height_m = 0.03);

struct SceneSpec {
  Rgb ground_color{45, 45, 50};
  Rgb sky_color{90, 90, 95};
  std::vector<GroundElement> ground_elements;  // later elements paint over earlier ones
  std::vector<SynthObstacle> obstacles;
  std::optional<ColorGain> ambient;
  double noise_sigma = 0.0;  // Gaussian pixel noise, 0..255 units
  int blur_px = 0;           // horizontal box blur length (motion blur)
  std::uint64_t seed = 0;
};

// Straight two-lane road, robot in the right lane centred on y = 0. The
// right boundary is a solid white line, the left one a dashed yellow line,
// the far side of the oncoming lane another white line.
struct StraightRoad {
  double lane_half_width = 0.115;  // lane middle to inner edge of the markings
  double white_width = 0.04;
  double yellow_width = 0.025;
  double dash_length = 0.05;
  double dash_gap = 0.05;
  double x_begin = -0.3;
  double x_end = 3.0;
  double dash_phase = 0.0;  // shifts the dash pattern along x
  bool centre_dashes = true;
};

std::vector<GroundElement> straight_road(const StraightRoad& road);

GroundElement stop_line(GroundPoint centre, double yaw, double along = 0.12, double across = 0.05,
                        Rgb color = kStopLineRed);

// Robot moved forward by dx: every element and obstacle shifts by -dx.
SceneSpec advance(const SceneSpec& spec, double dx);

struct RenderOptions {
  int supersample = 2;  // samples per pixel side
};

// Ground is shaded through the ray/ground intersection, obstacles are
// intersected as billboards along the same rays; the nearest hit wins.
// Deterministic for a fixed spec (noise uses spec.seed).
RgbImage render_scene(const SceneSpec& spec, const SynthCamera& cam, const RenderOptions& opts = {});

// White lane boundaries that separate the robot from out-of-lane obstacles.
struct LaneGeometry {
  std::vector<GroundElement> boundaries;
};

LaneGeometry lane_geometry(const SceneSpec& spec);

struct ExpectedObstacle {
  ObstacleKind kind = ObstacleKind::duck;
  GroundPoint position;  // billboard base centre
  double radius = 0.0;   // half the footprint
  bool in_lane = true;
};

// Obstacles the detector is expected to report: base inside the cropped
// image and no farther than cfg.crop_distance. in_lane is false when the
// straight segment from the robot to the obstacle crosses a lane boundary.
std::vector<ExpectedObstacle> scene_ground_truth(const SceneSpec& spec, const DetectionConfig& cfg,
                                                 const LaneGeometry& lane, const SynthCamera& cam);

}  // namespace ipmo::synth
