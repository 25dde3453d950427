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

#include "ipmo/detector.hpp"

#include <algorithm>
#include <tuple>

#include "ipmo/errors.hpp"

namespace ipmo {

namespace {

BirdviewMapping build_mapping(const CameraModel& cam, const DetectionConfig& cfg) {
  const int crop_row = std::min(crop_row_for_distance(cam, cfg.crop_distance), cam.height() - 2);
  return compute_birdview_transform(cam, crop_row, cfg.birdview_width);
}

}  // namespace

ObstacleDetector::ObstacleDetector(const CameraModel& cam, PipelineConfig cfg)
    : cam_(cam), cfg_(std::move(cfg)), mapping_((cfg_.detection.validate(), build_mapping(cam_, cfg_.detection))) {
  cfg_.bands.yellow.validate();
  cfg_.bands.orange.validate();
  cfg_.bands.white.validate();
}

DetectionResult ObstacleDetector::process(const RgbImage& frame, TrackerState& tracker, long frame_index,
                                          bool keep_stages) const {
  if (frame.width() != cam_.width() || frame.height() != cam_.height()) {
    throw ConfigError("frame is " + std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                      ", calibration expects " + std::to_string(cam_.width()) + "x" + std::to_string(cam_.height()));
  }
  const DetectionConfig& dc = cfg_.detection;

  const RgbImage corrected = cfg_.gain ? apply_color_gain(frame, *cfg_.gain) : frame;
  RgbImage bird = warp_to_birdview(crop_rows(corrected, mapping_.crop_row), mapping_, cfg_.interpolation);
  const HsvImage hsv = rgb_to_hsv(bird);
  BinaryMask yellow = apply_band_filter(hsv, cfg_.bands.yellow);
  BinaryMask orange = apply_band_filter(hsv, cfg_.bands.orange);
  BinaryMask white = apply_band_filter(hsv, cfg_.bands.white);
  LabelImage yellow_labels = label_components(yellow);
  LabelImage orange_labels = label_components(orange);

  const int min_pixels = min_pixel_threshold(dc, mapping_);
  std::vector<Obstacle> found;

  for (const Region& r : all_region_properties(orange_labels, ColorClass::orange)) {
    if (r.area < min_pixels || classify_orange(r, dc) != OrangeDecision::cone) continue;
    const ObstaclePose pose = obstacle_pose(r, mapping_);
    found.push_back({pose.position, pose.radius, true, ObstacleKind::cone, r.quad});
  }

  std::vector<Candidate> candidates;
  for (const Region& r : all_region_properties(yellow_labels, ColorClass::yellow)) {
    if (r.area < min_pixels) continue;
    const YellowDecision decision = classify_yellow(r, dc);
    if (decision == YellowDecision::rejected) continue;
    const ObstaclePose pose = obstacle_pose(r, mapping_);
    candidates.push_back({r, pose.position, pose.radius, frame_index, decision});
  }
  for (const Confirmation& c : tracker.update(candidates, frame_index, dc)) {
    const Candidate& cand = candidates[c.candidate];
    found.push_back({cand.ground_pos, cand.radius, true, ObstacleKind::duck, cand.region.quad});
  }

  const PixelCoord anchor = robot_anchor(mapping_);
  const double max_x = dc.crop_distance + 1.0 / mapping_.scale;
  std::vector<Obstacle> out;
  for (Obstacle& o : found) {
    if (o.radius <= 0.0 || o.position.x > max_x) continue;
    const PixelCoord bottom_mid{0.5 * (o.quad[2].u + o.quad[3].u),
                                std::min(o.quad[2].v, mapping_.out_height - 1.0)};
    o.in_lane = lane_boundary_check(white, anchor, bottom_mid, o.radius * mapping_.scale, dc.white_run_min);
    out.push_back(o);
  }
  std::sort(out.begin(), out.end(), [](const Obstacle& a, const Obstacle& b) {
    return std::tie(a.position.x, a.position.y) < std::tie(b.position.x, b.position.y);
  });

  DetectionResult result{std::move(out), std::nullopt};
  if (keep_stages) {
    result.stages = FrameStages{std::move(bird), std::move(yellow), std::move(orange), std::move(white),
                                std::move(yellow_labels), std::move(orange_labels)};
  }
  return result;
}

std::vector<Obstacle> detect_obstacles(const RgbImage& frame, const CameraModel& cam, const PipelineConfig& cfg,
                                       TrackerState& tracker, long frame_index) {
  return ObstacleDetector(cam, cfg).process(frame, tracker, frame_index).obstacles;
}

std::vector<Obstacle> detect_obstacles(const RgbImage& frame, const CameraModel& cam, const PipelineConfig& cfg,
                                       TrackerState& tracker) {
  return detect_obstacles(frame, cam, cfg, tracker, tracker.next_frame());
}

}  // namespace ipmo
