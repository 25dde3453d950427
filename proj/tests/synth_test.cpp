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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ipmo/errors.hpp"
#include "support/oracles.hpp"
#include "support/scenes.hpp"

namespace ipmo {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

TEST(SynthCamera, DefaultPose) {
  const synth::CameraPose pose;
  EXPECT_EQ(pose.height_m, 0.1);
  EXPECT_NEAR(pose.pitch_rad, 15.0 * kDeg, 1e-15);
}

TEST(SynthCamera, InvalidParametersThrow) {
  EXPECT_THROW(synth::make_camera({}, {0.1, std::numbers::pi / 2, 0.0}), ConfigError);
  EXPECT_THROW(synth::make_camera({}, {0.0, 0.3, 0.0}), ConfigError);
  synth::PinholeParams k;
  k.cx = 700.0;
  EXPECT_THROW(synth::make_camera(k, {}), ConfigError);
  k = {};
  k.f = -1.0;
  EXPECT_THROW(synth::make_camera(k, {}), ConfigError);
}

TEST(SynthCamera, RotationMatchesOracle) {
  const auto cam = synth::make_camera({}, {0.1, 20.0 * kDeg, 7.0 * kDeg});
  const Eigen::Matrix3d r = testing::camera_rotation(20.0 * kDeg, 7.0 * kDeg);
  EXPECT_LT((cam.world_from_camera() - r).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SynthCamera, NearNadirIsSimilarity) {
  const auto cam = synth::make_camera({}, {0.2, std::numbers::pi / 2 - 1e-7, 0.0});
  Mat3 h = cam.model().homography();
  h /= h(2, 2);
  EXPECT_NEAR(h(2, 0), 0.0, 1e-9);
  EXPECT_NEAR(h(2, 1), 0.0, 1e-9);
  // Upper-left block is a scaled rotation (possibly with reflection).
  const Eigen::Matrix2d a = h.topLeftCorner<2, 2>();
  const Eigen::Matrix2d g = a.transpose() * a;
  EXPECT_NEAR(g(0, 1), 0.0, 1e-9 * g(0, 0));
  EXPECT_NEAR(g(0, 0), g(1, 1), 1e-6 * g(0, 0));
  EXPECT_NEAR(std::sqrt(g(0, 0)), 0.2 / 450.0, 1e-9);
}

TEST(SynthCamera, ProjectionRoundTrip) {
  const auto cam = synth::make_camera({}, {0.1, 15.0 * kDeg, 0.0});
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> x(0.3, 1.6), y(-0.3, 0.3);
  for (int i = 0; i < 20; ++i) {
    const GroundPoint g{x(rng), y(rng)};
    const auto p = cam.project({g.x, g.y, 0.0});
    ASSERT_TRUE(p.has_value());
    const GroundPoint back = pixel_to_ground(cam.model(), *p);
    EXPECT_NEAR(back.x, g.x, 1e-9);
    EXPECT_NEAR(back.y, g.y, 1e-9);
    const PixelCoord o = testing::project(cam.pinhole(), cam.pose(), {g.x, g.y, 0.0});
    EXPECT_NEAR(p->u, o.u, 1e-9);
    EXPECT_NEAR(p->v, o.v, 1e-9);
  }
}

TEST(SynthCamera, HomographyMatchesRayPlaneEverywhere) {
  const auto cam = synth::make_camera({}, {0.12, 25.0 * kDeg, -4.0 * kDeg});
  for (int v = 0; v < 480; v += 7) {
    for (int u = 0; u < 640; u += 11) {
      const PixelCoord p{static_cast<double>(u), static_cast<double>(v)};
      if (!is_below_horizon(cam.model(), p)) continue;
      const GroundPoint g = pixel_to_ground(cam.model(), p);
      const GroundPoint o = testing::ray_plane(cam.pinhole(), cam.pose(), p.u, p.v);
      const double tol = 1e-9 * std::max(1.0, std::hypot(o.x, o.y));
      ASSERT_NEAR(g.x, o.x, tol);
      ASSERT_NEAR(g.y, o.y, tol);
    }
  }
}

TEST(SynthCamera, DoublingFocalLengthHalvesTheSpan) {
  synth::PinholeParams k;
  const synth::CameraPose pose{0.1, 30.0 * kDeg, 0.0};
  const auto a = synth::make_camera(k, pose);
  k.f *= 2.0;
  const auto b = synth::make_camera(k, pose);
  auto span = [](const synth::SynthCamera& c) {
    const double row = c.pinhole().cy;
    const GroundPoint l = pixel_to_ground(c.model(), {0.0, row});
    const GroundPoint r = pixel_to_ground(c.model(), {639.0, row});
    return std::abs(l.y - r.y);
  };
  EXPECT_NEAR(span(b) / span(a), 0.5, 1e-9);
}

TEST(RenderScene, EmptySpecIsGroundAndSky) {
  const auto cam = synth::make_camera({}, {0.1, 10.0 * kDeg, 0.0});
  synth::SceneSpec spec;
  const RgbImage img = synth::render_scene(spec, cam);
  ASSERT_EQ(img.width(), 640);
  ASSERT_EQ(img.height(), 480);
  for (int v = 0; v < 480; ++v) {
    // Skip the row straddling the horizon, which mixes both colours.
    const bool below = is_below_horizon(cam.model(), {0.0, v - 0.5});
    const bool above = !is_below_horizon(cam.model(), {0.0, v + 0.5});
    if (!below && !above) continue;
    for (int u = 0; u < 640; u += 13) ASSERT_EQ(img(u, v), below ? spec.ground_color : spec.sky_color) << v;
  }
}

TEST(RenderScene, Deterministic) {
  auto spec = testing::plain_ground();
  spec.obstacles.push_back(synth::make_duck({0.5, 0.02}));
  spec.noise_sigma = 3.0;
  spec.blur_px = 3;
  spec.seed = 9;
  const auto cam = synth::make_camera({}, {});
  EXPECT_TRUE(synth::render_scene(spec, cam) == synth::render_scene(spec, cam));
}

TEST(RenderScene, ResolutionStable) {
  synth::SceneSpec spec;
  synth::StraightRoad road;
  spec.ground_elements = synth::straight_road(road);
  spec.obstacles.push_back(synth::make_duck({0.5, 0.0}));
  spec.obstacles.push_back(synth::make_cone({0.8, -0.06}));
  const synth::PinholeParams lo;
  synth::PinholeParams hi;
  hi.f = 2.0 * lo.f;
  hi.cx = 2.0 * lo.cx + 0.5;
  hi.cy = 2.0 * lo.cy + 0.5;
  hi.width = 2 * lo.width;
  hi.height = 2 * lo.height;
  // 4x4 samples per low pixel land exactly on the 2x2 samples of each of
  // the four high-resolution pixels.
  const RgbImage a = synth::render_scene(spec, synth::make_camera(lo, {}), {4});
  const RgbImage b = synth::render_scene(spec, synth::make_camera(hi, {}), {2});
  int worst = 0;
  for (int v = 0; v < lo.height; ++v) {
    for (int u = 0; u < lo.width; ++u) {
      auto down = [&](auto ch) {
        const int s = ch(b(2 * u, 2 * v)) + ch(b(2 * u + 1, 2 * v)) + ch(b(2 * u, 2 * v + 1)) +
                      ch(b(2 * u + 1, 2 * v + 1));
        return s / 4.0;
      };
      worst = std::max({worst, static_cast<int>(std::ceil(std::abs(down([](Rgb c) { return c.r; }) - a(u, v).r))),
                        static_cast<int>(std::ceil(std::abs(down([](Rgb c) { return c.g; }) - a(u, v).g))),
                        static_cast<int>(std::ceil(std::abs(down([](Rgb c) { return c.b; }) - a(u, v).b)))});
    }
  }
  EXPECT_LE(worst, 2);
}

TEST(RenderScene, GroundSquareSurvivesWarp) {
  const auto cam = synth::make_camera({}, {});
  auto spec = testing::plain_ground();
  const double side = 0.12;
  spec.ground_elements.push_back(testing::square_patch(0.6, 0.0, side));
  const auto w = testing::render_and_warp(spec, cam, 1.7, 4);
  // Side lengths from coverage-weighted extents along the two axes.
  const PixelCoord c = w.mapping.ground_to_bird({0.6, 0.0});
  double across = 0.0, along = 0.0;
  for (int u = 0; u < w.bird.width(); ++u) across += std::clamp((w.bird(u, std::lround(c.v)).r - 40.0) / 215.0, 0.0, 1.0);
  for (int v = 0; v < w.bird.height(); ++v) along += std::clamp((w.bird(std::lround(c.u), v).r - 40.0) / 215.0, 0.0, 1.0);
  const double expected = side * w.mapping.scale;
  EXPECT_NEAR(across / expected, 1.0, 0.02);
  EXPECT_NEAR(along / expected, 1.0, 0.02);
}

TEST(RenderScene, BillboardIsInflatedAlongTheRay) {
  const auto cam = synth::make_camera({}, {});
  auto spec = testing::plain_ground();
  auto cone = synth::make_cone({0.6, 0.0});
  cone.color = {255, 255, 255};
  spec.obstacles.push_back(cone);
  const auto w = testing::render_and_warp(spec, cam);
  int vmin = w.bird.height(), vmax = -1, umin = w.bird.width(), umax = -1;
  for (int v = 0; v < w.bird.height(); ++v) {
    for (int u = 0; u < w.bird.width(); ++u) {
      if (w.bird(u, v).r < 150) continue;
      vmin = std::min(vmin, v), vmax = std::max(vmax, v), umin = std::min(umin, u), umax = std::max(umax, u);
    }
  }
  ASSERT_GE(vmax, 0);
  const double along = (vmax - vmin + 1) / w.mapping.scale;
  const double across = (umax - umin + 1) / w.mapping.scale;
  EXPECT_GT(along, across);  // elongated away from the camera
  EXPECT_GT(along, cone.footprint_m);
  EXPECT_GE(along * across, 1.5 * cone.footprint_m * cone.height_m);
}

TEST(GroundTruth, DuckInLane) {
  synth::SceneSpec spec;
  spec.ground_elements = synth::straight_road({});
  spec.obstacles.push_back(synth::make_duck({0.5, 0.0}));
  const auto cam = synth::make_camera({}, {});
  const auto t = synth::scene_ground_truth(spec, DetectionConfig{}, synth::lane_geometry(spec), cam);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].position.x, 0.5);
  EXPECT_EQ(t[0].position.y, 0.0);
  EXPECT_EQ(t[0].radius, 0.0175);
  EXPECT_TRUE(t[0].in_lane);
  EXPECT_EQ(t[0].kind, ObstacleKind::duck);
}

TEST(GroundTruth, ConeBeyondWhiteLine) {
  synth::SceneSpec spec;
  spec.ground_elements = synth::straight_road({});
  spec.obstacles.push_back(synth::make_cone({0.8, -0.2}));
  const auto cam = synth::make_camera({}, {});
  const auto t = synth::scene_ground_truth(spec, DetectionConfig{}, synth::lane_geometry(spec), cam);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_FALSE(t[0].in_lane);
}

TEST(GroundTruth, BeyondCropDistanceIsExcluded) {
  synth::SceneSpec spec;
  const DetectionConfig cfg;
  spec.obstacles.push_back(synth::make_duck({cfg.crop_distance + 0.2, 0.0}));
  const auto cam = synth::make_camera({}, {});
  EXPECT_TRUE(synth::scene_ground_truth(spec, cfg, synth::lane_geometry(spec), cam).empty());
}

TEST(GroundTruth, OutOfViewIsExcluded) {
  synth::SceneSpec spec;
  spec.obstacles.push_back(synth::make_duck({0.3, 0.5}));
  const auto cam = synth::make_camera({}, {});
  EXPECT_TRUE(synth::scene_ground_truth(spec, DetectionConfig{}, synth::lane_geometry(spec), cam).empty());
}

TEST(Scene, AdvanceShiftsEverything) {
  synth::SceneSpec spec;
  spec.ground_elements = synth::straight_road({});
  spec.obstacles.push_back(synth::make_duck({0.5, 0.1}));
  const auto moved = synth::advance(spec, 0.2);
  EXPECT_NEAR(moved.obstacles[0].position.x, 0.3, 1e-15);
  EXPECT_EQ(moved.obstacles[0].position.y, 0.1);
  for (std::size_t i = 0; i < spec.ground_elements.size(); ++i) {
    EXPECT_NEAR(moved.ground_elements[i].centre.x, spec.ground_elements[i].centre.x - 0.2, 1e-15);
  }
}

TEST(Scene, RoadLayout) {
  synth::StraightRoad road;
  const auto with = synth::straight_road(road);
  road.centre_dashes = false;
  const auto without = synth::straight_road(road);
  EXPECT_EQ(without.size(), 2u);
  EXPECT_GT(with.size(), 2u);
  // Right boundary: inner edge at -lane_half_width.
  EXPECT_NEAR(without[0].centre.y + 0.5 * without[0].width, -road.lane_half_width, 1e-15);
  for (std::size_t i = 2; i < with.size(); ++i) EXPECT_EQ(with[i].kind, synth::GroundElement::Kind::dash);
}

TEST(Scene, ElementContainsHonoursYaw) {
  const auto e = synth::stop_line({1.0, 0.0}, std::numbers::pi / 2, 0.12, 0.05);
  EXPECT_TRUE(e.contains({1.0, 0.055}));
  EXPECT_FALSE(e.contains({1.03, 0.0}));
}

}  // namespace
}  // namespace ipmo
