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
#include <iosfwd>
#include <optional>

#include "ipmo/config.hpp"
#include "ipmo/eval.hpp"

namespace ipmo {

struct RunSummary {
  int frames = 0;   // frames read
  int skipped = 0;  // frames dropped after a geometry error
  LatencyStats latency;
  std::optional<EvalReport> eval;  // scene input only
};

// Processes every input frame in order with one tracker, writes the
// artifacts selected by cfg.emit under cfg.output_dir. Throws ConfigError on
// invalid config or unreadable input.
RunSummary run_pipeline(const RunConfig& cfg, std::ostream& log);

struct SynthRequest {
  fs::path out_dir;
  std::optional<fs::path> scene_file;  // standard corpus when empty
  int frames = 300;                    // corpus size, or a cap on the scene's frame count
  std::uint64_t seed = 2026;
};

// Renders frames/frame_NNNNNN.ppm, truth.json and a ready-to-run
// detect.json. Corpus sequences are separated by a skipped frame index so
// the tracker starts fresh on each.
void render_synth(const SynthRequest& req, std::ostream& log);

// Diagnostics for a calibration; "ok" is false when the pixel/ground round
// trip misses 1e-6 m anywhere on the test grid.
Json calibration_report(const Calibration& cal, const DetectionConfig& det);

std::vector<FrameRecord> load_predictions(const fs::path& path);
std::vector<TruthFrame> load_truth(const fs::path& path);

}  // namespace ipmo
