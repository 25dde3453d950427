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

#include "ipmo/app.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include <Eigen/LU>

#include "ipmo/corpus.hpp"
#include "ipmo/errors.hpp"
#include "ipmo/netpbm.hpp"

namespace ipmo {

namespace {

constexpr Rgb kInLaneColor{255, 40, 40};
constexpr Rgb kOffLaneColor{40, 220, 40};
constexpr Rgb kCropColor{60, 120, 255};

struct FrameSource {
  long index = 0;
  std::string name;
  std::function<RgbImage()> load;
  std::optional<TruthFrame> truth;
};

std::string frame_name(long index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06ld", index);
  return buf;
}

std::optional<long> trailing_number(const fs::path& p) {
  const std::string stem = p.stem().string();
  std::size_t i = stem.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(stem[i - 1]))) --i;
  if (i == stem.size() || stem.size() - i > 12) return std::nullopt;
  return std::stol(stem.substr(i));
}

bool is_image(const fs::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".ppm" || ext == ".pgm" || ext == ".pnm";
}

// Files keep their listed order; a directory is read in name order. Trailing
// digits in the names become frame indices when they strictly increase.
std::vector<FrameSource> image_sources(std::vector<fs::path> files) {
  std::vector<FrameSource> out;
  std::vector<std::optional<long>> numbers;
  for (const auto& f : files) numbers.push_back(trailing_number(f));
  bool use_numbers = !files.empty();
  for (std::size_t i = 0; i < numbers.size() && use_numbers; ++i) {
    use_numbers = numbers[i] && (i == 0 || *numbers[i] > *numbers[i - 1]);
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    const fs::path f = files[i];
    out.push_back({use_numbers ? *numbers[i] : static_cast<long>(i), f.stem().string(), [f] { return read_ppm(f); },
                   std::nullopt});
  }
  return out;
}

std::vector<fs::path> list_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && is_image(e.path())) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no .ppm/.pgm frames in " + dir.string());
  return files;
}

PixelCoord bird_to_image(const BirdviewMapping& m, PixelCoord p) {
  const PixelCoord c = apply(m.bird_to_crop, p);
  return {c.u, c.v + m.crop_row};
}

void annotate_camera(RgbImage& img, const BirdviewMapping& m, const std::vector<Obstacle>& obstacles) {
  draw_line(img, {0.0, static_cast<double>(m.crop_row)}, {img.width() - 1.0, static_cast<double>(m.crop_row)},
            kCropColor);
  for (const auto& o : obstacles) {
    std::array<PixelCoord, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = bird_to_image(m, o.quad[i]);
    draw_quad(img, q, o.in_lane ? kInLaneColor : kOffLaneColor);
  }
}

void annotate_bird(RgbImage& bird, const std::vector<Obstacle>& obstacles) {
  for (const auto& o : obstacles) draw_quad(bird, o.quad, o.in_lane ? kInLaneColor : kOffLaneColor);
}

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create " + p.string() + ": " + ec.message());
}

Json truth_list_to_json(const std::vector<TruthFrame>& truth) {
  Json arr = Json::array();
  for (const auto& t : truth) arr.push_back(truth_frame_to_json(t));
  return arr;
}

Json latency_to_json(const LatencyStats& s) {
  return {{"count", s.count}, {"mean", s.mean_ms}, {"median", s.median_ms}, {"p95", s.p95_ms}, {"max", s.max_ms}};
}

}  // namespace

RunSummary run_pipeline(const RunConfig& cfg, std::ostream& log) {
  validate_run_config(cfg);

  std::vector<FrameSource> sources;
  std::optional<CameraModel> camera;
  if (cfg.calibration) camera = cfg.calibration->camera();

  if (cfg.input.scene) {
    const SceneFile scene = load_scene_file(*cfg.input.scene);
    const auto cam = std::make_shared<synth::SynthCamera>(scene.pinhole, scene.pose);
    if (!camera) camera = cam->model();
    const synth::LaneGeometry lane = synth::lane_geometry(scene.scene);
    for (int i = 0; i < scene.frames; ++i) {
      const synth::SceneSpec spec = synth::advance(scene.scene, scene.advance_m_per_frame * i);
      TruthFrame truth{i, synth::scene_ground_truth(spec, cfg.pipeline.detection, lane, *cam)};
      sources.push_back({i, frame_name(i), [spec, cam] { return synth::render_scene(spec, *cam); }, truth});
    }
  } else if (cfg.input.directory) {
    sources = image_sources(list_directory(*cfg.input.directory));
  } else {
    sources = image_sources(cfg.input.files);
  }

  if (cfg.max_frames > 0 && static_cast<int>(sources.size()) > cfg.max_frames) sources.resize(cfg.max_frames);

  const ObstacleDetector detector(*camera, cfg.pipeline);
  const BirdviewMapping& m = detector.mapping();
  const bool want_stages = cfg.emit.masks || cfg.emit.birdview;

  ensure_dir(cfg.output_dir);
  if (cfg.emit.json) ensure_dir(cfg.output_dir / "frames");
  if (cfg.emit.annotated) ensure_dir(cfg.output_dir / "annotated");
  if (cfg.emit.birdview) ensure_dir(cfg.output_dir / "birdview");
  if (cfg.emit.masks) ensure_dir(cfg.output_dir / "masks");

  TrackerState tracker;
  RunSummary summary;
  std::vector<double> latencies;
  std::vector<FrameRecord> records;
  std::vector<TruthFrame> truths;

  for (const FrameSource& src : sources) {
    RgbImage frame;
    try {
      frame = src.load();
    } catch (const ConfigError& e) {
      throw ConfigError("frame " + src.name + ": " + e.what());
    }
    ++summary.frames;

    const auto t0 = std::chrono::steady_clock::now();
    DetectionResult result;
    try {
      result = detector.process(frame, tracker, src.index, want_stages);
    } catch (const DegenerateProjection& e) {
      log << "frame " << src.name << " skipped: " << e.what() << '\n';
      ++summary.skipped;
      continue;
    } catch (const HorizonNotInFrame& e) {
      log << "frame " << src.name << " skipped: " << e.what() << '\n';
      ++summary.skipped;
      continue;
    }
    const AvoidanceCommand cmd = plan(result.obstacles, cfg.lane_pose, cfg.avoidance);
    latencies.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());

    FrameRecord rec{src.index, src.index * cfg.frame_period_s, result.obstacles, cmd};
    const std::string name = frame_name(src.index);
    if (cfg.emit.json) write_json_file(cfg.output_dir / "frames" / (name + ".json"), frame_record_to_json(rec));
    if (cfg.emit.annotated) {
      annotate_camera(frame, m, rec.obstacles);
      write_ppm(cfg.output_dir / "annotated" / (name + ".ppm"), frame);
    }
    if (cfg.emit.birdview) {
      annotate_bird(result.stages->birdview, rec.obstacles);
      write_ppm(cfg.output_dir / "birdview" / (name + ".ppm"), result.stages->birdview);
    }
    if (cfg.emit.masks) {
      const fs::path dir = cfg.output_dir / "masks";
      write_pgm(dir / (name + "_yellow.pgm"), result.stages->yellow);
      write_pgm(dir / (name + "_orange.pgm"), result.stages->orange);
      write_pgm(dir / (name + "_white.pgm"), result.stages->white);
      write_ppm(dir / (name + "_yellow_labels.ppm"), colorize_labels(result.stages->yellow_labels));
      write_ppm(dir / (name + "_orange_labels.ppm"), colorize_labels(result.stages->orange_labels));
    }
    records.push_back(std::move(rec));
    if (src.truth) truths.push_back(*src.truth);
  }

  summary.latency = latency_stats(latencies);
  if (!truths.empty()) {
    summary.eval = evaluate(records, truths);
    summary.eval->latency = summary.latency;
  }

  if (cfg.emit.json) {
    Json all = Json::array();
    for (const auto& r : records) all.push_back(frame_record_to_json(r));
    write_json_file(cfg.output_dir / "detections.json", all);
    if (!truths.empty()) write_json_file(cfg.output_dir / "truth.json", truth_list_to_json(truths));
  }
  if (cfg.emit.metrics) {
    Json metrics = {{"frames", summary.frames},
                    {"skipped", summary.skipped},
                    {"latency_ms", latency_to_json(summary.latency)},
                    {"birdview", {{"width", m.out_width}, {"height", m.out_height}, {"scale_px_per_m", m.scale}}}};
    if (summary.eval) metrics["eval"] = eval_report_to_json(*summary.eval);
    write_json_file(cfg.output_dir / "metrics.json", metrics);
  }
  return summary;
}

void render_synth(const SynthRequest& req, std::ostream& log) {
  if (req.frames < 1) throw ConfigError("--frames must be at least 1");
  ensure_dir(req.out_dir / "frames");

  synth::PinholeParams pinhole;
  synth::CameraPose pose;
  std::vector<std::pair<long, synth::SceneSpec>> frames;
  std::vector<synth::LaneGeometry> lanes;
  std::vector<std::size_t> lane_of;
  if (req.scene_file) {
    const SceneFile scene = load_scene_file(*req.scene_file);
    pinhole = scene.pinhole;
    pose = scene.pose;
    lanes.push_back(synth::lane_geometry(scene.scene));
    for (int i = 0; i < std::min(scene.frames, req.frames); ++i) {
      frames.emplace_back(i, synth::advance(scene.scene, scene.advance_m_per_frame * i));
      lane_of.push_back(0);
    }
  } else {
    long index = 0;
    for (const auto& seq : synth::detection_corpus(req.seed, req.frames)) {
      lanes.push_back(synth::lane_geometry(seq.start));
      for (int i = 0; i < seq.frames; ++i) {
        frames.emplace_back(index++, seq.frame(i));
        lane_of.push_back(lanes.size() - 1);
      }
      ++index;  // gap: tracks never carry across sequences
    }
  }

  const synth::SynthCamera cam(pinhole, pose);
  const DetectionConfig det;
  std::vector<TruthFrame> truth;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& [index, spec] = frames[k];
    write_ppm(req.out_dir / "frames" / (frame_name(index) + ".ppm"), synth::render_scene(spec, cam));
    truth.push_back({index, synth::scene_ground_truth(spec, det, lanes[lane_of[k]], cam)});
  }
  write_json_file(req.out_dir / "truth.json", truth_list_to_json(truth));

  RunConfig run;
  run.calibration = Calibration{cam.model().homography(), pinhole.width, pinhole.height};
  run.input.directory = "frames";
  run.output_dir = "detect";
  run.emit = parse_emit("json,metrics");
  write_json_file(req.out_dir / "detect.json", run_config_to_json(run));
  log << "wrote " << frames.size() << " frames to " << (req.out_dir / "frames").string() << '\n';
}

Json calibration_report(const Calibration& cal, const DetectionConfig& det) {
  const CameraModel cam = cal.camera();
  Json report;
  const Mat3& h = cam.homography();
  report["determinant"] = h.determinant();

  // Highest row whose centre pixel is still below the horizon.
  int first_ground_row = -1;
  for (int v = 0; v < cam.height(); ++v) {
    if (is_below_horizon(cam, {0.5 * (cam.width() - 1), static_cast<double>(v)})) {
      first_ground_row = v;
      break;
    }
  }
  report["first_ground_row"] = first_ground_row;

  const int crop_row = std::min(crop_row_for_distance(cam, det.crop_distance), cam.height() - 2);
  report["crop_row"] = crop_row;
  report["crop_distance_m"] = det.crop_distance;

  const BirdviewMapping m = compute_birdview_transform(cam, crop_row, det.birdview_width);
  report["birdview"] = {{"width", m.out_width},
                        {"height", m.out_height},
                        {"scale_px_per_m", m.scale},
                        {"origin_m", {m.origin.x, m.origin.y}}};

  Json corners = Json::array();
  const double w = cam.width() - 1.0, hgt = cam.height() - 1.0;
  for (PixelCoord p : {PixelCoord{0.0, 1.0 * crop_row}, PixelCoord{w, 1.0 * crop_row}, PixelCoord{w, hgt},
                       PixelCoord{0.0, hgt}}) {
    const GroundPoint g = pixel_to_ground(cam, p);
    corners.push_back({{"u", p.u}, {"v", p.v}, {"x_m", g.x}, {"y_m", g.y}});
  }
  report["crop_corners"] = corners;

  double worst = 0.0;
  const int steps = 16;
  for (int i = 0; i <= steps; ++i) {
    for (int k = 0; k <= steps; ++k) {
      const PixelCoord p{w * k / steps, crop_row + (hgt - crop_row) * i / steps};
      const GroundPoint g = pixel_to_ground(cam, p);
      const PixelCoord back = ground_to_pixel(cam, g);
      const GroundPoint again = pixel_to_ground(cam, back);
      worst = std::max(worst, std::hypot(again.x - g.x, again.y - g.y));
    }
  }
  report["round_trip_max_error_m"] = worst;
  report["ok"] = worst < 1e-6;
  return report;
}

std::vector<FrameRecord> load_predictions(const fs::path& path) {
  std::vector<FrameRecord> out;
  // A detect output directory: use its combined file, else its frames/ records.
  if (fs::is_directory(path) && fs::is_regular_file(path / "detections.json")) {
    return load_predictions(path / "detections.json");
  }
  if (fs::is_directory(path) && fs::is_directory(path / "frames")) return load_predictions(path / "frames");
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(frame_record_from_json(read_json_file(f)));
    return out;
  }
  const Json j = read_json_file(path);
  if (!j.is_array()) throw ConfigError(path.string() + ": expected a list of frame records");
  for (const auto& r : j) out.push_back(frame_record_from_json(r));
  return out;
}

std::vector<TruthFrame> load_truth(const fs::path& path) {
  const Json j = read_json_file(path);
  if (!j.is_array()) throw ConfigError(path.string() + ": expected a list of truth frames");
  std::vector<TruthFrame> out;
  for (const auto& t : j) out.push_back(truth_frame_from_json(t));
  return out;
}

}  // namespace ipmo
