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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ipmo/avoidance.hpp"
#include "ipmo/detector.hpp"
#include "ipmo/serialization.hpp"
#include "ipmo/synth.hpp"

namespace ipmo {

namespace fs = std::filesystem;

struct Calibration {
  Mat3 homography = Mat3::Identity();  // pixel -> ground
  int image_width = 640;
  int image_height = 480;

  CameraModel camera() const { return CameraModel(homography, image_width, image_height); }
};

struct EmitFlags {
  bool annotated = false;
  bool masks = false;
  bool birdview = false;
  bool json = true;
  bool metrics = false;
};

// Comma list of annotated, masks, birdview, json, metrics. Throws ConfigError
// on unknown names.
EmitFlags parse_emit(const std::string& list);

struct InputSource {
  std::vector<fs::path> files;
  std::optional<fs::path> directory;
  std::optional<fs::path> scene;
};

struct RunConfig {
  std::optional<Calibration> calibration;
  PipelineConfig pipeline;
  AvoidanceConfig avoidance;
  LanePose lane_pose;
  InputSource input;
  fs::path output_dir = "out";
  EmitFlags emit;
  double frame_period_s = 0.1;  // timestamp step between frames
  int max_frames = 0;           // 0 processes every frame
};

// Relative paths are resolved against base_dir. Missing sections keep their
// defaults; unknown keys are rejected. Throws ConfigError.
RunConfig run_config_from_json(const Json& j, const fs::path& base_dir);
RunConfig load_run_config(const fs::path& path);
Json run_config_to_json(const RunConfig& cfg);

// Checks the run-time invariants: exactly one input source, referenced paths
// exist, calibration present unless the input is a scene.
void validate_run_config(const RunConfig& cfg);

struct SceneFile {
  synth::PinholeParams pinhole;
  synth::CameraPose pose;
  synth::SceneSpec scene;
  int frames = 1;
  double advance_m_per_frame = 0.0;
};

SceneFile scene_file_from_json(const Json& j);
SceneFile load_scene_file(const fs::path& path);

Json read_json_file(const fs::path& path);
void write_json_file(const fs::path& path, const Json& j);

}  // namespace ipmo
