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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ipmo/detection.hpp"

namespace ipmo {

struct Candidate {
  Region region;
  GroundPoint ground_pos;
  double radius = 0.0;
  long frame = 0;
  YellowDecision strength = YellowDecision::weak;
};

struct Track {
  int id = 0;
  GroundPoint last_pos;
  double last_lambda1 = 0.0;
  int hits = 1;
  long last_frame = 0;
};

struct Confirmation {
  std::size_t candidate = 0;  // index into the candidate list passed to update
  int track_id = 0;
  int hits = 0;
};

// Frame-to-frame association for yellow candidates. A track survives only
// if it is matched in the very next frame.
class TrackerState {
 public:
  // Candidates are associated greedily by ground distance (within
  // cfg.track_gate) to tracks last seen in frame - 1. Unmatched candidates
  // open new tracks, unmatched tracks are dropped. A strong candidate whose
  // lambda1 stayed within size_change_max confirms at 2 hits; everything
  // else needs cfg.confirm_frames hits. Throws NonMonotonicFrame unless
  // frame exceeds the previous one.
  std::vector<Confirmation> update(std::span<const Candidate> candidates, long frame, const DetectionConfig& cfg);

  const std::vector<Track>& tracks() const { return tracks_; }
  std::optional<long> last_frame() const { return last_frame_; }
  long next_frame() const { return last_frame_ ? *last_frame_ + 1 : 0; }

 private:
  std::vector<Track> tracks_;
  std::optional<long> last_frame_;
  int next_id_ = 1;
};

inline std::vector<Confirmation> track_update(TrackerState& tracker, std::span<const Candidate> candidates,
                                              long frame, const DetectionConfig& cfg) {
  return tracker.update(candidates, frame, cfg);
}

}  // namespace ipmo
