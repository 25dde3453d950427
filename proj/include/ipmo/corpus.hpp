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
#include <vector>

#include "ipmo/detector.hpp"
#include "ipmo/synth.hpp"

namespace ipmo::synth {

// A scene that slides toward the robot by step_m per frame.
struct Sequence {
  SceneSpec start;
  int frames = 50;
  double step_m = 0.01;

  SceneSpec frame(int i) const { return advance(start, step_m * i); }
};

// Evaluation corpus: sequences alternate between an in-lane duck and an
// in-lane cone, each paired with an out-of-lane obstacle of the other kind
// behind the right white line, plus a stop line ahead of the obstacles.
// Far range is kept within 1.5 m so tall objects are not truncated by the
// 1.7 m crop.
std::vector<Sequence> detection_corpus(std::uint64_t seed, int total_frames = 300, int frames_per_sequence = 50);

// Straight approach toward a single in-lane obstacle; index picks duck or
// cone and a size/offset variant.
SceneSpec approach_scene(std::uint64_t seed, int index);

struct CalibrationSample {
  SceneSpec scene;
  bool cone = false;
};

// Isolated cones and isolated stop lines over the working range, used to
// place cone_ratio_threshold in the gap between the two populations.
std::vector<CalibrationSample> cone_calibration_set();

struct RatioPopulations {
  std::vector<double> cone;
  std::vector<double> stop_line;
};

// Renders every calibration sample and collects eigen ratios of orange
// regions that pass the size floor.
RatioPopulations collect_cone_ratios(const SynthCamera& cam, const PipelineConfig& cfg,
                                     const std::vector<CalibrationSample>& samples);

}  // namespace ipmo::synth
