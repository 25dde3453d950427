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

#include <optional>
#include <vector>

#include "ipmo/colorspace.hpp"
#include "ipmo/detection.hpp"
#include "ipmo/geometry.hpp"
#include "ipmo/segmentation.hpp"
#include "ipmo/tracker.hpp"

namespace ipmo {

struct ColorBands {
  ColorBand yellow = default_yellow_band();
  ColorBand orange = default_orange_band();
  ColorBand white = default_white_band();
};

struct PipelineConfig {
  DetectionConfig detection;
  ColorBands bands;
  std::optional<ColorGain> gain;
  Interpolation interpolation = Interpolation::bilinear;
};

// Intermediate rasters of one frame, kept on request for debugging dumps.
struct FrameStages {
  RgbImage birdview;
  BinaryMask yellow;
  BinaryMask orange;
  BinaryMask white;
  LabelImage yellow_labels;
  LabelImage orange_labels;
};

struct DetectionResult {
  std::vector<Obstacle> obstacles;  // ascending ground x
  std::optional<FrameStages> stages;
};

// Camera-specific precomputation (crop row, bird-view transform) plus the
// per-frame pipeline. process() is const; all frame-to-frame state lives in
// the TrackerState the caller owns.
class ObstacleDetector {
 public:
  // Throws ConfigError / HorizonNotInFrame / DegenerateProjection when the
  // calibration cannot produce a bird view.
  ObstacleDetector(const CameraModel& cam, PipelineConfig cfg);

  DetectionResult process(const RgbImage& frame, TrackerState& tracker, long frame_index,
                          bool keep_stages = false) const;

  const CameraModel& camera() const { return cam_; }
  const BirdviewMapping& mapping() const { return mapping_; }
  const PipelineConfig& config() const { return cfg_; }

 private:
  CameraModel cam_;
  PipelineConfig cfg_;
  BirdviewMapping mapping_;
};

// One-shot convenience wrapper; builds the bird-view transform on every call.
std::vector<Obstacle> detect_obstacles(const RgbImage& frame, const CameraModel& cam, const PipelineConfig& cfg,
                                       TrackerState& tracker, long frame_index);

// Same, with frame_index = tracker.next_frame().
std::vector<Obstacle> detect_obstacles(const RgbImage& frame, const CameraModel& cam, const PipelineConfig& cfg,
                                       TrackerState& tracker);

}  // namespace ipmo
