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

#include "ipmo/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "ipmo/errors.hpp"

namespace ipmo {

std::vector<Confirmation> TrackerState::update(std::span<const Candidate> candidates, long frame,
                                               const DetectionConfig& cfg) {
  if (last_frame_ && frame <= *last_frame_) {
    throw NonMonotonicFrame("frame " + std::to_string(frame) + " does not follow frame " +
                            std::to_string(*last_frame_));
  }

  struct Pair {
    double dist;
    std::size_t track;
    std::size_t cand;
  };
  std::vector<Pair> pairs;
  for (std::size_t t = 0; t < tracks_.size(); ++t) {
    if (tracks_[t].last_frame != frame - 1) continue;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (candidates[c].strength == YellowDecision::rejected) continue;
      const double d = std::hypot(candidates[c].ground_pos.x - tracks_[t].last_pos.x,
                                  candidates[c].ground_pos.y - tracks_[t].last_pos.y);
      if (d <= cfg.track_gate) pairs.push_back({d, t, c});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return std::tie(a.dist, a.track, a.cand) < std::tie(b.dist, b.track, b.cand); });

  std::vector<int> track_for_cand(candidates.size(), -1);
  std::vector<bool> track_used(tracks_.size(), false);
  for (const auto& p : pairs) {
    if (track_used[p.track] || track_for_cand[p.cand] >= 0) continue;
    track_used[p.track] = true;
    track_for_cand[p.cand] = static_cast<int>(p.track);
  }

  std::vector<Track> next;
  std::vector<Confirmation> confirmed;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Candidate& cand = candidates[c];
    if (cand.strength == YellowDecision::rejected) continue;

    Track track;
    bool size_changed = false;
    if (track_for_cand[c] >= 0) {
      const Track& prev = tracks_[track_for_cand[c]];
      track.id = prev.id;
      track.hits = prev.hits + 1;
      size_changed = std::abs(cand.region.lambda1 - prev.last_lambda1) > cfg.size_change_max * prev.last_lambda1;
    } else {
      track.id = next_id_++;
      track.hits = 1;
    }
    track.last_pos = cand.ground_pos;
    track.last_lambda1 = cand.region.lambda1;
    track.last_frame = frame;

    const bool fast = cand.strength == YellowDecision::strong && !size_changed;
    const int required = fast ? std::min(2, cfg.confirm_frames) : cfg.confirm_frames;
    if (track.hits >= required) confirmed.push_back({c, track.id, track.hits});
    next.push_back(track);
  }
  tracks_ = std::move(next);
  last_frame_ = frame;
  return confirmed;
}

}  // namespace ipmo
