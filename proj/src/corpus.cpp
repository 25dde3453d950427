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

#include "ipmo/corpus.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "ipmo/errors.hpp"

namespace ipmo::synth {

namespace {

constexpr double kAcross = std::numbers::pi / 2.0;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

SynthObstacle sized(ObstacleKind kind, GroundPoint p, double s) {
  return kind == ObstacleKind::duck ? make_duck(p, 0.035 * s, 0.025 * s) : make_cone(p, 0.045 * s, 0.03 * s);
}

ObstacleKind other(ObstacleKind k) { return k == ObstacleKind::duck ? ObstacleKind::cone : ObstacleKind::duck; }

SceneSpec empty_road() {
  StraightRoad road;
  road.centre_dashes = false;
  SceneSpec spec;
  spec.ground_elements = straight_road(road);
  return spec;
}

}  // namespace

std::vector<Sequence> detection_corpus(std::uint64_t seed, int total_frames, int frames_per_sequence) {
  if (total_frames < 1 || frames_per_sequence < 1) throw ConfigError("corpus frame counts must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Sequence> out;
  for (int made = 0, i = 0; made < total_frames; made += frames_per_sequence, ++i) {
    const ObstacleKind kind = i % 2 == 0 ? ObstacleKind::duck : ObstacleKind::cone;
    SceneSpec spec = empty_road();

    const double x_in = uniform(rng, 0.85, 1.5);
    spec.obstacles.push_back(sized(kind, {x_in, uniform(rng, -0.06, 0.06)}, uniform(rng, 0.85, 1.15)));
    spec.obstacles.push_back(
        sized(other(kind), {uniform(rng, 0.85, 1.5), uniform(rng, -0.205, -0.18)}, uniform(rng, 0.85, 1.15)));
    // Nearer than the in-lane obstacle so nothing stands on it in the image.
    spec.ground_elements.push_back(stop_line({x_in - uniform(rng, 0.15, 0.3), uniform(rng, -0.02, 0.02)}, kAcross,
                                             0.12 * uniform(rng, 0.9, 1.1), 0.05));
    spec.seed = seed + static_cast<std::uint64_t>(i);

    Sequence seq;
    seq.start = std::move(spec);
    seq.frames = std::min(frames_per_sequence, total_frames - made);
    seq.step_m = 0.01;
    out.push_back(std::move(seq));
  }
  return out;
}

SceneSpec approach_scene(std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(index) * 7919u);
  SceneSpec spec = empty_road();
  const ObstacleKind kind = index % 2 == 0 ? ObstacleKind::duck : ObstacleKind::cone;
  spec.obstacles.push_back(
      sized(kind, {uniform(rng, 1.0, 1.5), uniform(rng, -0.04, 0.04)}, uniform(rng, 0.85, 1.15)));
  spec.seed = seed + static_cast<std::uint64_t>(index);
  return spec;
}

std::vector<CalibrationSample> cone_calibration_set() {
  std::vector<CalibrationSample> out;
  for (int ix = 0; ix <= 12; ++ix) {
    const double x = 0.3 + 0.1 * ix;
    for (double y : {-0.08, 0.0, 0.08}) {
      for (double s : {0.8, 1.0, 1.2}) {
        SceneSpec cone = empty_road();
        cone.obstacles.push_back(make_cone({x, y}, 0.045 * s, 0.03 * s));
        out.push_back({std::move(cone), true});
        SceneSpec line = empty_road();
        line.ground_elements.push_back(stop_line({x, y}, kAcross, 0.12 * s, 0.05 * s));
        out.push_back({std::move(line), false});
      }
    }
  }
  return out;
}

RatioPopulations collect_cone_ratios(const SynthCamera& cam, const PipelineConfig& cfg,
                                     const std::vector<CalibrationSample>& samples) {
  const ObstacleDetector detector(cam.model(), cfg);
  const int min_pixels = min_pixel_threshold(cfg.detection, detector.mapping());
  RatioPopulations pop;
  for (const auto& sample : samples) {
    TrackerState tracker;
    const auto result = detector.process(render_scene(sample.scene, cam), tracker, 0, true);
    for (const Region& r : all_region_properties(result.stages->orange_labels, ColorClass::orange)) {
      if (r.area < min_pixels) continue;
      (sample.cone ? pop.cone : pop.stop_line).push_back(eigen_ratio(r));
    }
  }
  return pop;
}

}  // namespace ipmo::synth
