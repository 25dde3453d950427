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

#include <Eigen/Core>

#include "ipmo/image.hpp"

namespace ipmo {

using Mat3 = Eigen::Matrix3d;

// Robot frame on the ground plane: x forward along the robot axis, y to the
// left. Camera ground point at the origin.
struct GroundPoint {
  double x = 0.0;
  double y = 0.0;
};

// Sub-pixel image coordinate; integer values are pixel centres.
struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

// Calibrated ground-plane camera.
//
// The homography maps homogeneous *pixel* coordinates to homogeneous ground
// coordinates in metres:  [X Y W]^T = H [u v 1]^T,  ground = (X/W, Y/W).
// Projecting ground into the image therefore uses H^-1.
class CameraModel {
 public:
  // Throws ConfigError when |det H| <= 1e-12 or the dimensions are < 1.
  CameraModel(const Mat3& pixel_to_ground, int width, int height);

  const Mat3& homography() const { return pixel_to_ground_; }
  const Mat3& inverse() const { return ground_to_pixel_; }
  int width() const { return width_; }
  int height() const { return height_; }

 private:
  Mat3 pixel_to_ground_;
  Mat3 ground_to_pixel_;
  int width_;
  int height_;
};

inline constexpr double kMinHomogeneousW = 1e-9;

GroundPoint pixel_to_ground(const CameraModel& cam, PixelCoord p);
PixelCoord ground_to_pixel(const CameraModel& cam, GroundPoint g);

// True when p lies on the ground side of the horizon line, i.e. its
// homogeneous w has the sign of the bottom-centre pixel's w.
bool is_below_horizon(const CameraModel& cam, PixelCoord p);

// Smallest row whose centre-column pixel, and every row below it, maps to a
// ground point with 0 < x <= max_dist. Throws HorizonNotInFrame when even
// the bottom row fails.
int crop_row_for_distance(const CameraModel& cam, double max_dist);

// Unique projective map taking src[i] to dst[i] (four points, no three
// collinear). Throws DegenerateProjection for degenerate configurations.
Mat3 perspective_from_points(const std::array<PixelCoord, 4>& src, const std::array<PixelCoord, 4>& dst);

PixelCoord apply(const Mat3& m, PixelCoord p);

// Perspective transform from the cropped camera image to a metric bird's-eye
// raster. Bird-view columns grow to the robot's right, rows grow toward the
// robot; the scale is isotropic.
struct BirdviewMapping {
  Mat3 crop_to_bird;
  Mat3 bird_to_crop;
  int crop_row = 0;
  int out_width = 0;
  int out_height = 0;
  double scale = 1.0;   // pixels per metre
  GroundPoint origin;   // ground point of bird pixel (0, out_height - 1)

  GroundPoint bird_to_ground(PixelCoord p) const;
  PixelCoord ground_to_bird(GroundPoint g) const;
};

inline constexpr int kDefaultBirdviewWidth = 640;

BirdviewMapping compute_birdview_transform(const CameraModel& cam, int crop_row,
                                           int out_width = kDefaultBirdviewWidth);

enum class Interpolation { bilinear, nearest };

// Resamples the cropped image into the bird view. Out-of-source samples are
// black. Runs the OpenMP kernel; output is independent of the thread count.
RgbImage warp_to_birdview(const RgbImage& cropped, const BirdviewMapping& m,
                          Interpolation interp = Interpolation::bilinear);

}  // namespace ipmo
