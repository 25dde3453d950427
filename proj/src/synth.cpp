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

#include "ipmo/synth.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "ipmo/errors.hpp"

namespace ipmo::synth {

namespace {

Eigen::Matrix3d camera_rotation(const CameraPose& pose) {
  const double cp = std::cos(pose.pitch_rad), sp = std::sin(pose.pitch_rad);
  const double cy = std::cos(pose.yaw_rad), sy = std::sin(pose.yaw_rad);
  const Vec3 forward(cp * cy, cp * sy, -sp);
  const Vec3 right(sy, -cy, 0.0);
  const Vec3 down = forward.cross(right);
  Eigen::Matrix3d r;
  r.col(0) = right;
  r.col(1) = down;
  r.col(2) = forward;
  return r;
}

// Ground (x, y, 1) -> pixel is K R^T [e1 e2 -C]; its inverse maps pixels to
// the ground.
Mat3 ground_homography(const PinholeParams& pp, const CameraPose& pose, const Eigen::Matrix3d& rotation) {
  Mat3 k;
  k << pp.f, 0, pp.cx, 0, pp.f, pp.cy, 0, 0, 1;
  Mat3 plane;
  plane << 1, 0, 0, 0, 1, 0, 0, 0, -pose.height_m;
  const Mat3 ground_to_pixel = k * rotation.transpose() * plane;
  return ground_to_pixel.inverse();
}

CameraModel validated_model(const PinholeParams& pp, const CameraPose& pose, const Eigen::Matrix3d& rotation) {
  pp.validate();
  pose.validate();
  return CameraModel(ground_homography(pp, pose, rotation), pp.width, pp.height);
}

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  Rgb color;
};

// Lateral unit vector of a billboard standing at p, perpendicular to the
// line of sight from the camera ground point.
Vec3 billboard_normal(GroundPoint p) {
  const double n = std::hypot(p.x, p.y);
  return {p.x / n, p.y / n, 0.0};
}

struct PreparedElement {
  const GroundElement* element;
  double xmin, xmax, ymin, ymax;
};

struct PreparedObstacle {
  const SynthObstacle* obstacle;
  Vec3 base;
  Vec3 normal;
  Vec3 lateral;
};

Rgb shade_sample(const SceneSpec& spec, const SynthCamera& cam, const std::vector<PreparedElement>& elements,
                 const std::vector<PreparedObstacle>& obstacles, PixelCoord p) {
  const Vec3 c = cam.centre();
  const Vec3 r = cam.ray(p);
  Hit best;
  best.color = spec.sky_color;

  if (r.z() < 0.0) {
    best.t = -c.z() / r.z();
    const GroundPoint g{c.x() + best.t * r.x(), c.y() + best.t * r.y()};
    best.color = spec.ground_color;
    for (const auto& pe : elements) {
      if (g.x < pe.xmin || g.x > pe.xmax || g.y < pe.ymin || g.y > pe.ymax) continue;
      if (pe.element->contains(g)) best.color = pe.element->color;
    }
  }
  for (const auto& po : obstacles) {
    const double denom = po.normal.dot(r);
    if (std::abs(denom) < 1e-12) continue;
    const double t = po.normal.dot(po.base - c) / denom;
    if (!(t > 0.0) || t >= best.t) continue;
    const Vec3 hit = c + t * r;
    const double z = hit.z();
    if (z < 0.0 || z > po.obstacle->height_m) continue;
    const double l = po.lateral.dot(hit - po.base);
    if (std::abs(l) <= 0.5 * po.obstacle->width_at(z)) {
      best.t = t;
      best.color = po.obstacle->color;
    }
  }
  return best.color;
}

std::uint8_t to_byte(double x) { return static_cast<std::uint8_t>(std::clamp(std::lround(x), 0L, 255L)); }

void add_noise(RgbImage& img, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (Rgb& px : img.pixels()) {
    px = {to_byte(px.r + noise(rng)), to_byte(px.g + noise(rng)), to_byte(px.b + noise(rng))};
  }
}

void box_blur_rows(RgbImage& img, int length) {
  if (length <= 1) return;
  const RgbImage src = img;
  const int half = length / 2;
  for (int v = 0; v < img.height(); ++v) {
    for (int u = 0; u < img.width(); ++u) {
      int sr = 0, sg = 0, sb = 0, n = 0;
      for (int k = u - half; k < u - half + length; ++k) {
        if (k < 0 || k >= img.width()) continue;
        const Rgb c = src(k, v);
        sr += c.r;
        sg += c.g;
        sb += c.b;
        ++n;
      }
      img(u, v) = {to_byte(static_cast<double>(sr) / n), to_byte(static_cast<double>(sg) / n),
                   to_byte(static_cast<double>(sb) / n)};
    }
  }
}

// Liang-Barsky clip of segment a->b against the element's rectangle.
bool segment_hits(const GroundElement& e, GroundPoint a, GroundPoint b) {
  const double c = std::cos(e.yaw), s = std::sin(e.yaw);
  auto local = [&](GroundPoint p) {
    const double dx = p.x - e.centre.x, dy = p.y - e.centre.y;
    return GroundPoint{c * dx + s * dy, -s * dx + c * dy};
  };
  const GroundPoint la = local(a), lb = local(b);
  const double hx = 0.5 * e.length, hy = 0.5 * e.width;
  const double dx = lb.x - la.x, dy = lb.y - la.y;
  double t0 = 0.0, t1 = 1.0;
  const std::array<std::pair<double, double>, 4> planes{
      {{-dx, la.x + hx}, {dx, hx - la.x}, {-dy, la.y + hy}, {dy, hy - la.y}}};
  for (const auto& [p, q] : planes) {
    if (p == 0.0) {
      if (q < 0.0) return false;
      continue;
    }
    const double t = q / p;
    if (p < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

void PinholeParams::validate() const {
  if (!(f > 0.0)) throw ConfigError("pinhole: f must be positive");
  if (width < 1 || height < 1) throw ConfigError("pinhole: image size must be positive");
  if (cx < 0.0 || cx > width - 1 || cy < 0.0 || cy > height - 1) {
    throw ConfigError("pinhole: principal point must lie inside the image");
  }
}

void CameraPose::validate() const {
  if (!(height_m > 0.0)) throw ConfigError("camera pose: height must be positive");
  if (!(pitch_rad > 0.0 && pitch_rad < std::numbers::pi / 2)) {
    throw ConfigError("camera pose: pitch must lie strictly between 0 and pi/2");
  }
  if (!std::isfinite(yaw_rad)) throw ConfigError("camera pose: yaw must be finite");
}

SynthCamera::SynthCamera(const PinholeParams& pinhole, const CameraPose& pose)
    : pinhole_(pinhole),
      pose_(pose),
      rotation_(camera_rotation(pose)),
      model_(validated_model(pinhole, pose, rotation_)) {}

std::optional<PixelCoord> SynthCamera::project(const Vec3& world) const {
  const Vec3 pc = rotation_.transpose() * (world - centre());
  if (pc.z() <= 1e-12) return std::nullopt;
  return PixelCoord{pinhole_.f * pc.x() / pc.z() + pinhole_.cx, pinhole_.f * pc.y() / pc.z() + pinhole_.cy};
}

Vec3 SynthCamera::ray(PixelCoord p) const {
  return rotation_ * Vec3((p.u - pinhole_.cx) / pinhole_.f, (p.v - pinhole_.cy) / pinhole_.f, 1.0);
}

SynthCamera make_camera(const PinholeParams& pinhole, const CameraPose& pose) { return SynthCamera(pinhole, pose); }

bool GroundElement::contains(GroundPoint p) const {
  const double dx = p.x - centre.x, dy = p.y - centre.y;
  const double c = std::cos(yaw), s = std::sin(yaw);
  return std::abs(c * dx + s * dy) <= 0.5 * length && std::abs(-s * dx + c * dy) <= 0.5 * width;
}

SynthObstacle make_duck(GroundPoint position, double footprint_m, double height_m) {
  return {ObstacleKind::duck, footprint_m, height_m, position, kDuckYellow, 0.5};
}

SynthObstacle make_cone(GroundPoint position, double footprint_m, double height_m) {
  return {ObstacleKind::cone, footprint_m, height_m, position, kConeOrange, 0.8};
}

std::vector<GroundElement> straight_road(const StraightRoad& road) {
  using Kind = GroundElement::Kind;
  std::vector<GroundElement> out;
  const double length = road.x_end - road.x_begin;
  const double xc = 0.5 * (road.x_begin + road.x_end);
  const double right_y = -road.lane_half_width - 0.5 * road.white_width;
  out.push_back({Kind::lane_line, {xc, right_y}, 0.0, length, road.white_width, kLaneWhite});
  const double far_y = road.lane_half_width + road.yellow_width + 2.0 * road.lane_half_width + 0.5 * road.white_width;
  out.push_back({Kind::lane_line, {xc, far_y}, 0.0, length, road.white_width, kLaneWhite});

  if (!road.centre_dashes) return out;

  const double yellow_y = road.lane_half_width + 0.5 * road.yellow_width;
  const double period = road.dash_length + road.dash_gap;
  const double first = road.x_begin + std::fmod(std::fmod(road.dash_phase, period) + period, period) - period;
  for (double x = first; x < road.x_end; x += period) {
    const double lo = std::max(x, road.x_begin);
    const double hi = std::min(x + road.dash_length, road.x_end);
    if (hi <= lo) continue;
    out.push_back({Kind::dash, {0.5 * (lo + hi), yellow_y}, 0.0, hi - lo, road.yellow_width, kLaneYellow});
  }
  return out;
}

GroundElement stop_line(GroundPoint centre, double yaw, double along, double across, Rgb color) {
  return {GroundElement::Kind::stop_line, centre, yaw, along, across, color};
}

SceneSpec advance(const SceneSpec& spec, double dx) {
  SceneSpec out = spec;
  for (auto& e : out.ground_elements) e.centre.x -= dx;
  for (auto& o : out.obstacles) o.position.x -= dx;
  return out;
}

RgbImage render_scene(const SceneSpec& spec, const SynthCamera& cam, const RenderOptions& opts) {
  std::vector<PreparedElement> elements;
  for (const auto& e : spec.ground_elements) {
    const double c = std::abs(std::cos(e.yaw)), s = std::abs(std::sin(e.yaw));
    const double ex = 0.5 * (c * e.length + s * e.width), ey = 0.5 * (s * e.length + c * e.width);
    elements.push_back({&e, e.centre.x - ex, e.centre.x + ex, e.centre.y - ey, e.centre.y + ey});
  }
  std::vector<PreparedObstacle> obstacles;
  for (const auto& o : spec.obstacles) {
    if (std::hypot(o.position.x, o.position.y) < 1e-6) continue;
    const Vec3 n = billboard_normal(o.position);
    obstacles.push_back({&o, Vec3(o.position.x, o.position.y, 0.0), n, Vec3(-n.y(), n.x(), 0.0)});
  }

  const int ss = std::max(1, opts.supersample);
  const int w = cam.pinhole().width, h = cam.pinhole().height;
  RgbImage img(w, h);
#pragma omp parallel for schedule(static)
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      int sr = 0, sg = 0, sb = 0;
      for (int j = 0; j < ss; ++j) {
        for (int i = 0; i < ss; ++i) {
          const PixelCoord p{u + (i + 0.5) / ss - 0.5, v + (j + 0.5) / ss - 0.5};
          const Rgb c = shade_sample(spec, cam, elements, obstacles, p);
          sr += c.r;
          sg += c.g;
          sb += c.b;
        }
      }
      const double n = ss * ss;
      img(u, v) = {to_byte(sr / n), to_byte(sg / n), to_byte(sb / n)};
    }
  }
  if (spec.blur_px > 1) box_blur_rows(img, spec.blur_px);
  if (spec.noise_sigma > 0.0) add_noise(img, spec.noise_sigma, spec.seed);
  if (spec.ambient) img = apply_color_gain(img, *spec.ambient);
  return img;
}

LaneGeometry lane_geometry(const SceneSpec& spec) {
  LaneGeometry lane;
  for (const auto& e : spec.ground_elements) {
    if (e.kind == GroundElement::Kind::lane_line) lane.boundaries.push_back(e);
  }
  return lane;
}

std::vector<ExpectedObstacle> scene_ground_truth(const SceneSpec& spec, const DetectionConfig& cfg,
                                                 const LaneGeometry& lane, const SynthCamera& cam) {
  const CameraModel& model = cam.model();
  int crop_row = 0;
  try {
    crop_row = crop_row_for_distance(model, cfg.crop_distance);
  } catch (const HorizonNotInFrame&) {
    return {};
  }
  auto visible = [&](GroundPoint g) {
    const auto p = cam.project({g.x, g.y, 0.0});
    return p && p->u >= 0.0 && p->u <= model.width() - 1 && p->v >= crop_row && p->v <= model.height() - 1;
  };

  std::vector<ExpectedObstacle> out;
  for (const auto& o : spec.obstacles) {
    if (o.position.x > cfg.crop_distance || std::hypot(o.position.x, o.position.y) < 1e-6) continue;
    const Vec3 n = billboard_normal(o.position);
    const GroundPoint side{-n.y() * 0.5 * o.footprint_m, n.x() * 0.5 * o.footprint_m};
    if (!visible(o.position) || !visible({o.position.x + side.x, o.position.y + side.y}) ||
        !visible({o.position.x - side.x, o.position.y - side.y})) {
      continue;
    }
    const bool blocked = std::any_of(lane.boundaries.begin(), lane.boundaries.end(),
                                     [&](const GroundElement& e) { return segment_hits(e, {0.0, 0.0}, o.position); });
    out.push_back({o.kind, o.position, 0.5 * o.footprint_m, !blocked});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.position.x < b.position.x; });
  return out;
}

}  // namespace ipmo::synth
