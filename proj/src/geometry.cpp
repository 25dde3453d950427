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

#include "ipmo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ipmo/errors.hpp"
#include "ipmo/kernels.hpp"

namespace ipmo {

namespace {

Eigen::Vector3d homogeneous(PixelCoord p) { return {p.u, p.v, 1.0}; }

PixelCoord bottom_centre(const CameraModel& cam) {
  return {0.5 * (cam.width() - 1), static_cast<double>(cam.height() - 1)};
}

// Similarity that moves the centroid of pts to the origin and sets the mean
// distance to sqrt(2).
Mat3 normalizing_transform(const std::array<PixelCoord, 4>& pts) {
  double cu = 0.0;
  double cv = 0.0;
  for (const auto& p : pts) {
    cu += p.u;
    cv += p.v;
  }
  cu /= 4.0;
  cv /= 4.0;
  double mean_dist = 0.0;
  for (const auto& p : pts) mean_dist += std::hypot(p.u - cu, p.v - cv);
  mean_dist /= 4.0;
  if (mean_dist <= 0.0) throw DegenerateProjection("perspective_from_points: coincident points");
  const double s = std::sqrt(2.0) / mean_dist;
  Mat3 t;
  t << s, 0, -s * cu, 0, s, -s * cv, 0, 0, 1;
  return t;
}

}  // namespace

CameraModel::CameraModel(const Mat3& pixel_to_ground, int width, int height)
    : pixel_to_ground_(pixel_to_ground), width_(width), height_(height) {
  if (width < 1 || height < 1) throw ConfigError("CameraModel: width and height must be >= 1");
  if (!pixel_to_ground.allFinite()) throw ConfigError("CameraModel: homography has non-finite entries");
  if (std::abs(pixel_to_ground.determinant()) <= 1e-12) throw ConfigError("CameraModel: homography is singular");
  ground_to_pixel_ = pixel_to_ground.inverse();
}

PixelCoord apply(const Mat3& m, PixelCoord p) {
  const Eigen::Vector3d q = m * homogeneous(p);
  if (std::abs(q.z()) < kMinHomogeneousW) throw DegenerateProjection("projective map sends point to infinity");
  return {q.x() / q.z(), q.y() / q.z()};
}

GroundPoint pixel_to_ground(const CameraModel& cam, PixelCoord p) {
  const Eigen::Vector3d q = cam.homography() * homogeneous(p);
  if (std::abs(q.z()) < kMinHomogeneousW) {
    throw DegenerateProjection("pixel (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                               ") lies on the horizon");
  }
  return {q.x() / q.z(), q.y() / q.z()};
}

PixelCoord ground_to_pixel(const CameraModel& cam, GroundPoint g) {
  const Eigen::Vector3d q = cam.inverse() * Eigen::Vector3d(g.x, g.y, 1.0);
  if (std::abs(q.z()) < kMinHomogeneousW) throw DegenerateProjection("ground point projects to infinity");
  return {q.x() / q.z(), q.y() / q.z()};
}

bool is_below_horizon(const CameraModel& cam, PixelCoord p) {
  const double w_ref = (cam.homography() * homogeneous(bottom_centre(cam))).z();
  const double w = (cam.homography() * homogeneous(p)).z();
  return std::abs(w) >= kMinHomogeneousW && std::signbit(w) == std::signbit(w_ref);
}

int crop_row_for_distance(const CameraModel& cam, double max_dist) {
  if (!(max_dist > 0.0)) throw ConfigError("crop_row_for_distance: max_dist must be positive");
  const double uc = 0.5 * (cam.width() - 1);
  auto in_range = [&](int v) {
    const PixelCoord p{uc, static_cast<double>(v)};
    return is_below_horizon(cam, p) && pixel_to_ground(cam, p).x <= max_dist;
  };
  if (!in_range(cam.height() - 1)) {
    throw HorizonNotInFrame("no image row maps within " + std::to_string(max_dist) + " m");
  }
  int row = cam.height() - 1;
  while (row > 0 && in_range(row - 1)) --row;
  return row;
}

Mat3 perspective_from_points(const std::array<PixelCoord, 4>& src, const std::array<PixelCoord, 4>& dst) {
  const Mat3 ts = normalizing_transform(src);
  const Mat3 td = normalizing_transform(dst);

  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector3d s = ts * homogeneous(src[i]);
    const Eigen::Vector3d d = td * homogeneous(dst[i]);
    const double x = s.x(), y = s.y(), X = d.x(), Y = d.y();
    a.row(2 * i) << x, y, 1, 0, 0, 0, -x * X, -y * X;
    a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -x * Y, -y * Y;
    b(2 * i) = X;
    b(2 * i + 1) = Y;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  lu.setThreshold(1e-10);
  if (lu.rank() < 8) throw DegenerateProjection("perspective_from_points: degenerate correspondences");
  const Eigen::Matrix<double, 8, 1> h = lu.solve(b);

  Mat3 hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0;
  Mat3 m = td.inverse() * hn * ts;
  return m / m(2, 2);
}

GroundPoint BirdviewMapping::bird_to_ground(PixelCoord p) const {
  return {origin.x + (out_height - 1 - p.v) / scale, origin.y - p.u / scale};
}

PixelCoord BirdviewMapping::ground_to_bird(GroundPoint g) const {
  return {(origin.y - g.y) * scale, (out_height - 1) - (g.x - origin.x) * scale};
}

BirdviewMapping compute_birdview_transform(const CameraModel& cam, int crop_row, int out_width) {
  if (crop_row < 0 || crop_row > cam.height() - 2) {
    throw ConfigError("compute_birdview_transform: crop_row must lie in [0, height-2]");
  }
  if (out_width < 2) throw ConfigError("compute_birdview_transform: out_width must be >= 2");

  const double w = cam.width() - 1;
  const double hc = cam.height() - 1 - crop_row;
  const std::array<PixelCoord, 4> crop_corners{{{0, 0}, {w, 0}, {w, hc}, {0, hc}}};

  std::array<GroundPoint, 4> ground{};
  for (int i = 0; i < 4; ++i) {
    const PixelCoord full{crop_corners[i].u, crop_corners[i].v + crop_row};
    if (!is_below_horizon(cam, full)) {
      throw DegenerateProjection("cropped image corner " + std::to_string(i) + " is at or above the horizon");
    }
    ground[i] = pixel_to_ground(cam, full);
  }
  auto [xmin_it, xmax_it] = std::minmax_element(ground.begin(), ground.end(),
                                                [](auto a, auto b) { return a.x < b.x; });
  auto [ymin_it, ymax_it] = std::minmax_element(ground.begin(), ground.end(),
                                                [](auto a, auto b) { return a.y < b.y; });
  const double xmin = xmin_it->x, xmax = xmax_it->x, ymin = ymin_it->y, ymax = ymax_it->y;
  if (!(ymax - ymin > 0.0) || !(xmax - xmin > 0.0)) {
    throw DegenerateProjection("cropped image covers a degenerate ground region");
  }

  BirdviewMapping m;
  m.crop_row = crop_row;
  m.out_width = out_width;
  m.scale = (out_width - 1) / (ymax - ymin);
  m.out_height = static_cast<int>(std::ceil((xmax - xmin) * m.scale - 1e-9)) + 1;
  m.origin = {xmax - (m.out_height - 1) / m.scale, ymax};

  std::array<PixelCoord, 4> bird_corners{};
  for (int i = 0; i < 4; ++i) bird_corners[i] = m.ground_to_bird(ground[i]);
  m.crop_to_bird = perspective_from_points(crop_corners, bird_corners);
  m.bird_to_crop = m.crop_to_bird.inverse();
  return m;
}

RgbImage warp_to_birdview(const RgbImage& cropped, const BirdviewMapping& m, Interpolation interp) {
  return kernels::warp(cropped, m.bird_to_crop, m.out_width, m.out_height, interp, kernels::Exec::parallel);
}

}  // namespace ipmo
