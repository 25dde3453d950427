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

#include "ipmo/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "ipmo/errors.hpp"

namespace ipmo {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Object view that rejects keys outside the allowed set.
class Section {
 public:
  Section(const Json& j, std::string where, std::initializer_list<const char*> keys) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw ConfigError(where_ + ": expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items()) {
      if (!allowed.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const Json& at(const char* key) const {
    if (!has(key)) throw ConfigError(where_ + ": missing '" + key + "'");
    return j_.at(key);
  }
  std::string path(const char* key) const { return where_ + "." + key; }

  template <class T>
  void get(const char* key, T& out) const {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(path(key) + ": wrong type");
    }
  }

 private:
  const Json& j_;
  std::string where_;
};

std::pair<double, double> range_pair(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + ": expected [lo, hi]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ColorBand band_from_json(const Json& j, ColorClass name, ColorBand band, const std::string& where) {
  Section s(j, where, {"h", "s", "v"});
  band.name = name;
  if (s.has("h")) std::tie(band.h_lo, band.h_hi) = range_pair(s.at("h"), s.path("h"));
  if (s.has("s")) std::tie(band.s_lo, band.s_hi) = range_pair(s.at("s"), s.path("s"));
  if (s.has("v")) std::tie(band.v_lo, band.v_hi) = range_pair(s.at("v"), s.path("v"));
  band.validate();
  return band;
}

Json band_to_json(const ColorBand& b) {
  return {{"h", {b.h_lo, b.h_hi}}, {"s", {b.s_lo, b.s_hi}}, {"v", {b.v_lo, b.v_hi}}};
}

ColorGain gain_from_json(const Json& j, const std::string& where) {
  Section s(j, where, {"r", "g", "b"});
  ColorGain g;
  const char* names[3] = {"r", "g", "b"};
  for (int c = 0; c < 3; ++c) {
    if (!s.has(names[c])) continue;
    const auto [a, b] = range_pair(s.at(names[c]), s.path(names[c]));
    g.rgb[c] = {a, b};
  }
  return g;
}

Json gain_to_json(const ColorGain& g) {
  return {{"r", {g.rgb[0].a, g.rgb[0].b}}, {"g", {g.rgb[1].a, g.rgb[1].b}}, {"b", {g.rgb[2].a, g.rgb[2].b}}};
}

Calibration calibration_from_json(const Json& j, DetectionConfig& det) {
  Section s(j, "calibration", {"homography", "image_width", "image_height", "crop_distance_m", "birdview_width_px"});
  const Json& h = s.at("homography");
  if (!h.is_array() || h.size() != 9) throw ConfigError("calibration.homography: expected 9 numbers");
  Calibration c;
  for (int i = 0; i < 9; ++i) {
    if (!h[i].is_number()) throw ConfigError("calibration.homography: expected 9 numbers");
    c.homography(i / 3, i % 3) = h[i].get<double>();
  }
  s.get("image_width", c.image_width);
  s.get("image_height", c.image_height);
  s.get("crop_distance_m", det.crop_distance);
  s.get("birdview_width_px", det.birdview_width);
  (void)c.camera();  // throws on singular H or bad size
  return c;
}

void detection_from_json(const Json& j, DetectionConfig& d) {
  Section s(j, "detection", {"min_pixels_base", "reference_scale_px_per_m", "ev_accept", "ev_fast_track",
                             "size_change_max", "confirm_frames", "cone_ratio_threshold", "track_gate_m",
                             "white_run_min"});
  s.get("min_pixels_base", d.min_pixels_base);
  s.get("reference_scale_px_per_m", d.reference_scale);
  s.get("ev_accept", d.ev_accept);
  s.get("ev_fast_track", d.ev_fast_track);
  s.get("size_change_max", d.size_change_max);
  s.get("confirm_frames", d.confirm_frames);
  s.get("cone_ratio_threshold", d.cone_ratio_threshold);
  s.get("track_gate_m", d.track_gate);
  s.get("white_run_min", d.white_run_min);
}

void avoidance_from_json(const Json& j, AvoidanceConfig& a) {
  Section s(j, "avoidance", {"lane_width_m", "robot_width_m", "safety_margin_m", "box_length_m", "box_half_width_m",
                             "cruise_speed_mps", "strict_stop"});
  s.get("lane_width_m", a.lane_width);
  s.get("robot_width_m", a.robot_width);
  s.get("safety_margin_m", a.safety_margin);
  s.get("box_length_m", a.box.length);
  s.get("box_half_width_m", a.box.half_width);
  s.get("cruise_speed_mps", a.cruise_speed);
  s.get("strict_stop", a.strict_stop);
  a.validate();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

InputSource input_from_json(const Json& j, const fs::path& base) {
  Section s(j, "input", {"files", "directory", "scene"});
  InputSource in;
  if (s.has("files")) {
    const Json& f = s.at("files");
    if (!f.is_array()) throw ConfigError("input.files: expected a list of paths");
    for (const auto& p : f) {
      if (!p.is_string()) throw ConfigError("input.files: expected a list of paths");
      in.files.push_back(resolve(base, p.get<std::string>()));
    }
  }
  std::string tmp;
  if (s.has("directory")) {
    s.get("directory", tmp);
    in.directory = resolve(base, tmp);
  }
  if (s.has("scene")) {
    s.get("scene", tmp);
    in.scene = resolve(base, tmp);
  }
  return in;
}

Rgb rgb_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + ": expected [r, g, b]");
  Rgb c;
  std::uint8_t* ch[3] = {&c.r, &c.g, &c.b};
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer() || j[i].get<int>() < 0 || j[i].get<int>() > 255) {
      throw ConfigError(where + ": channels must be integers in 0..255");
    }
    *ch[i] = static_cast<std::uint8_t>(j[i].get<int>());
  }
  return c;
}

}  // namespace

EmitFlags parse_emit(const std::string& list) {
  EmitFlags e;
  e.json = false;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "annotated") e.annotated = true;
    else if (item == "masks") e.masks = true;
    else if (item == "birdview") e.birdview = true;
    else if (item == "json") e.json = true;
    else if (item == "metrics") e.metrics = true;
    else if (!item.empty()) throw ConfigError("unknown emit flag '" + item + "'");
  }
  return e;
}

RunConfig run_config_from_json(const Json& j, const fs::path& base_dir) {
  Section s(j, "config", {"calibration", "bands", "color_gain", "detection", "avoidance", "lane_pose", "input",
                          "output_dir", "emit", "interpolation", "frame_period_s"});
  RunConfig cfg;
  DetectionConfig& det = cfg.pipeline.detection;
  if (s.has("detection")) detection_from_json(s.at("detection"), det);
  if (s.has("calibration")) cfg.calibration = calibration_from_json(s.at("calibration"), det);
  det.validate();

  if (s.has("bands")) {
    Section b(s.at("bands"), "bands", {"yellow", "orange", "white"});
    ColorBands& cb = cfg.pipeline.bands;
    if (b.has("yellow")) cb.yellow = band_from_json(b.at("yellow"), ColorClass::yellow, cb.yellow, "bands.yellow");
    if (b.has("orange")) cb.orange = band_from_json(b.at("orange"), ColorClass::orange, cb.orange, "bands.orange");
    if (b.has("white")) cb.white = band_from_json(b.at("white"), ColorClass::white, cb.white, "bands.white");
  }
  if (s.has("color_gain")) cfg.pipeline.gain = gain_from_json(s.at("color_gain"), "color_gain");
  if (s.has("avoidance")) avoidance_from_json(s.at("avoidance"), cfg.avoidance);
  if (s.has("lane_pose")) {
    Section lp(s.at("lane_pose"), "lane_pose", {"d_m", "theta_rad"});
    lp.get("d_m", cfg.lane_pose.d);
    lp.get("theta_rad", cfg.lane_pose.theta);
  }
  if (s.has("input")) cfg.input = input_from_json(s.at("input"), base_dir);

  std::string text;
  if (s.has("output_dir")) {
    s.get("output_dir", text);
    cfg.output_dir = resolve(base_dir, text);
  } else {
    cfg.output_dir = base_dir / "out";
  }
  if (s.has("emit")) {
    const Json& e = s.at("emit");
    if (e.is_string()) {
      cfg.emit = parse_emit(e.get<std::string>());
    } else if (e.is_array()) {
      std::string joined;
      for (const auto& x : e) {
        if (!x.is_string()) throw ConfigError("emit: expected names");
        joined += x.get<std::string>() + ",";
      }
      cfg.emit = parse_emit(joined);
    } else {
      throw ConfigError("emit: expected a list of names");
    }
  }
  if (s.has("interpolation")) {
    s.get("interpolation", text);
    if (text == "bilinear") cfg.pipeline.interpolation = Interpolation::bilinear;
    else if (text == "nearest") cfg.pipeline.interpolation = Interpolation::nearest;
    else throw ConfigError("interpolation: expected bilinear or nearest");
  }
  s.get("frame_period_s", cfg.frame_period_s);
  if (!(cfg.frame_period_s > 0) || !std::isfinite(cfg.frame_period_s)) {
    throw ConfigError("frame_period_s must be positive");
  }
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  return run_config_from_json(read_json_file(path), path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

Json run_config_to_json(const RunConfig& cfg) {
  const DetectionConfig& d = cfg.pipeline.detection;
  const AvoidanceConfig& a = cfg.avoidance;
  Json j;
  if (cfg.calibration) {
    Json h = Json::array();
    for (int i = 0; i < 9; ++i) h.push_back(cfg.calibration->homography(i / 3, i % 3));
    j["calibration"] = {{"homography", h},
                        {"image_width", cfg.calibration->image_width},
                        {"image_height", cfg.calibration->image_height},
                        {"crop_distance_m", d.crop_distance},
                        {"birdview_width_px", d.birdview_width}};
  }
  j["bands"] = {{"yellow", band_to_json(cfg.pipeline.bands.yellow)},
                {"orange", band_to_json(cfg.pipeline.bands.orange)},
                {"white", band_to_json(cfg.pipeline.bands.white)}};
  if (cfg.pipeline.gain) j["color_gain"] = gain_to_json(*cfg.pipeline.gain);
  j["detection"] = {{"min_pixels_base", d.min_pixels_base},
                    {"reference_scale_px_per_m", d.reference_scale},
                    {"ev_accept", d.ev_accept},
                    {"ev_fast_track", d.ev_fast_track},
                    {"size_change_max", d.size_change_max},
                    {"confirm_frames", d.confirm_frames},
                    {"cone_ratio_threshold", d.cone_ratio_threshold},
                    {"track_gate_m", d.track_gate},
                    {"white_run_min", d.white_run_min}};
  j["avoidance"] = {{"lane_width_m", a.lane_width},         {"robot_width_m", a.robot_width},
                    {"safety_margin_m", a.safety_margin},   {"box_length_m", a.box.length},
                    {"box_half_width_m", a.box.half_width}, {"cruise_speed_mps", a.cruise_speed},
                    {"strict_stop", a.strict_stop}};
  j["lane_pose"] = {{"d_m", cfg.lane_pose.d}, {"theta_rad", cfg.lane_pose.theta}};
  Json in = Json::object();
  if (!cfg.input.files.empty()) {
    in["files"] = Json::array();
    for (const auto& f : cfg.input.files) in["files"].push_back(f.string());
  }
  if (cfg.input.directory) in["directory"] = cfg.input.directory->string();
  if (cfg.input.scene) in["scene"] = cfg.input.scene->string();
  j["input"] = in;
  j["output_dir"] = cfg.output_dir.string();
  Json emit = Json::array();
  if (cfg.emit.annotated) emit.push_back("annotated");
  if (cfg.emit.masks) emit.push_back("masks");
  if (cfg.emit.birdview) emit.push_back("birdview");
  if (cfg.emit.json) emit.push_back("json");
  if (cfg.emit.metrics) emit.push_back("metrics");
  j["emit"] = emit;
  j["interpolation"] = cfg.pipeline.interpolation == Interpolation::bilinear ? "bilinear" : "nearest";
  j["frame_period_s"] = cfg.frame_period_s;
  return j;
}

void validate_run_config(const RunConfig& cfg) {
  const int sources = (cfg.input.files.empty() ? 0 : 1) + (cfg.input.directory ? 1 : 0) + (cfg.input.scene ? 1 : 0);
  if (sources != 1) throw ConfigError("input: exactly one of files, directory, scene is required");
  for (const auto& f : cfg.input.files) {
    if (!fs::is_regular_file(f)) throw ConfigError("input file not found: " + f.string());
  }
  if (cfg.input.directory && !fs::is_directory(*cfg.input.directory)) {
    throw ConfigError("input directory not found: " + cfg.input.directory->string());
  }
  if (cfg.input.scene && !fs::is_regular_file(*cfg.input.scene)) {
    throw ConfigError("scene file not found: " + cfg.input.scene->string());
  }
  if (cfg.max_frames < 0) throw ConfigError("frame limit must be >= 0");
  if (!cfg.input.scene && !cfg.calibration) throw ConfigError("calibration section is required for image input");
  cfg.pipeline.detection.validate();
  cfg.avoidance.validate();
}

SceneFile scene_file_from_json(const Json& j) {
  Section s(j, "scene", {"camera", "road", "obstacles", "stop_lines", "patches", "frames", "advance_m_per_frame",
                         "noise_sigma", "blur_px", "seed", "ambient", "ground_color", "sky_color"});
  SceneFile out;
  if (s.has("camera")) {
    Section c(s.at("camera"), "scene.camera",
              {"f_px", "cx", "cy", "width", "height", "height_m", "pitch_deg", "yaw_deg"});
    c.get("f_px", out.pinhole.f);
    c.get("cx", out.pinhole.cx);
    c.get("cy", out.pinhole.cy);
    c.get("width", out.pinhole.width);
    c.get("height", out.pinhole.height);
    c.get("height_m", out.pose.height_m);
    double deg = out.pose.pitch_rad / kDeg;
    c.get("pitch_deg", deg);
    out.pose.pitch_rad = deg * kDeg;
    deg = out.pose.yaw_rad / kDeg;
    c.get("yaw_deg", deg);
    out.pose.yaw_rad = deg * kDeg;
  }
  out.pinhole.validate();
  out.pose.validate();

  synth::SceneSpec& scene = out.scene;
  if (s.has("road")) {
    const Json& r = s.at("road");
    if (!r.is_null()) {
      Section rs(r, "scene.road",
                 {"lane_half_width_m", "white_width_m", "yellow_width_m", "dash_length_m", "dash_gap_m", "x_begin_m",
                  "x_end_m", "dash_phase_m", "centre_dashes"});
      synth::StraightRoad road;
      rs.get("lane_half_width_m", road.lane_half_width);
      rs.get("white_width_m", road.white_width);
      rs.get("yellow_width_m", road.yellow_width);
      rs.get("dash_length_m", road.dash_length);
      rs.get("dash_gap_m", road.dash_gap);
      rs.get("x_begin_m", road.x_begin);
      rs.get("x_end_m", road.x_end);
      rs.get("dash_phase_m", road.dash_phase);
      rs.get("centre_dashes", road.centre_dashes);
      if (!(road.dash_length > 0) || !(road.dash_gap >= 0) || !(road.x_end > road.x_begin)) {
        throw ConfigError("scene.road: invalid dash or extent values");
      }
      scene.ground_elements = synth::straight_road(road);
    }
  }
  if (s.has("patches")) {
    for (const auto& p : s.at("patches")) {
      Section ps(p, "scene.patches[]", {"x_m", "y_m", "yaw_deg", "length_m", "width_m", "color"});
      synth::GroundElement e;
      ps.get("x_m", e.centre.x);
      ps.get("y_m", e.centre.y);
      double yaw = 0.0;
      ps.get("yaw_deg", yaw);
      e.yaw = yaw * kDeg;
      ps.get("length_m", e.length);
      ps.get("width_m", e.width);
      if (ps.has("color")) e.color = rgb_from_json(ps.at("color"), "scene.patches[].color");
      scene.ground_elements.push_back(e);
    }
  }
  if (s.has("stop_lines")) {
    for (const auto& p : s.at("stop_lines")) {
      Section ps(p, "scene.stop_lines[]", {"x_m", "y_m", "yaw_deg", "along_m", "across_m"});
      GroundPoint c;
      double yaw = 90.0, along = 0.12, across = 0.05;
      ps.get("x_m", c.x);
      ps.get("y_m", c.y);
      ps.get("yaw_deg", yaw);
      ps.get("along_m", along);
      ps.get("across_m", across);
      scene.ground_elements.push_back(synth::stop_line(c, yaw * kDeg, along, across));
    }
  }
  if (s.has("obstacles")) {
    for (const auto& p : s.at("obstacles")) {
      Section os(p, "scene.obstacles[]", {"class", "x_m", "y_m", "footprint_m", "height_m", "color", "taper"});
      std::string cls = "duck";
      os.get("class", cls);
      const ObstacleKind kind = obstacle_kind_from_string(cls);
      GroundPoint pos;
      os.get("x_m", pos.x);
      os.get("y_m", pos.y);
      synth::SynthObstacle o = kind == ObstacleKind::duck ? synth::make_duck(pos) : synth::make_cone(pos);
      os.get("footprint_m", o.footprint_m);
      os.get("height_m", o.height_m);
      os.get("taper", o.taper);
      if (os.has("color")) o.color = rgb_from_json(os.at("color"), "scene.obstacles[].color");
      if (!(o.footprint_m > 0) || !(o.height_m > 0) || !(o.taper >= 0) || !(o.taper < 1)) {
        throw ConfigError("scene.obstacles[]: footprint/height must be positive, taper in [0, 1)");
      }
      scene.obstacles.push_back(o);
    }
  }
  s.get("frames", out.frames);
  s.get("advance_m_per_frame", out.advance_m_per_frame);
  s.get("noise_sigma", scene.noise_sigma);
  s.get("blur_px", scene.blur_px);
  s.get("seed", scene.seed);
  if (s.has("ambient")) scene.ambient = gain_from_json(s.at("ambient"), "scene.ambient");
  if (s.has("ground_color")) scene.ground_color = rgb_from_json(s.at("ground_color"), "scene.ground_color");
  if (s.has("sky_color")) scene.sky_color = rgb_from_json(s.at("sky_color"), "scene.sky_color");
  if (out.frames < 1) throw ConfigError("scene.frames must be at least 1");
  if (!(scene.noise_sigma >= 0) || scene.blur_px < 0) throw ConfigError("scene: noise_sigma and blur_px must be >= 0");
  return out;
}

SceneFile load_scene_file(const fs::path& path) { return scene_file_from_json(read_json_file(path)); }

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_json_file(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace ipmo
