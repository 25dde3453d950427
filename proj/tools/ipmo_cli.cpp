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

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "ipmo/app.hpp"
#include "ipmo/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInvariant = 2;

int detect(const std::string& config, const std::string& out, const std::string& emit, int frames) {
  ipmo::RunConfig cfg = ipmo::load_run_config(config);
  if (!out.empty()) cfg.output_dir = out;
  if (!emit.empty()) cfg.emit = ipmo::parse_emit(emit);
  if (frames > 0) cfg.max_frames = frames;
  const ipmo::RunSummary s = ipmo::run_pipeline(cfg, std::cerr);
  std::cout << "processed " << s.frames << " frames (" << s.skipped << " skipped), mean latency " << s.latency.mean_ms
            << " ms\n";
  if (s.eval) std::cout << ipmo::eval_report_to_json(*s.eval).dump(2) << '\n';
  return kOk;
}

int eval(const std::string& pred, const std::string& truth, double match_dist, const std::string& out) {
  const auto predictions = ipmo::load_predictions(pred);
  const auto expected = ipmo::load_truth(truth);
  const ipmo::EvalReport report = ipmo::evaluate(predictions, expected, match_dist);
  const ipmo::Json j = ipmo::eval_report_to_json(report);
  if (!out.empty()) {
    ipmo::fs::create_directories(out);
    ipmo::write_json_file(ipmo::fs::path(out) / "eval.json", j);
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int synth(const std::string& config, const std::string& out, int frames, std::uint64_t seed) {
  ipmo::SynthRequest req;
  req.out_dir = out;
  req.seed = seed;
  if (frames > 0) req.frames = frames;
  if (!config.empty()) {
    const ipmo::RunConfig cfg = ipmo::load_run_config(config);
    if (!cfg.input.scene) throw ipmo::ConfigError("synth: the config needs an input.scene entry");
    req.scene_file = cfg.input.scene;
    if (frames <= 0) req.frames = 1 << 30;
  }
  ipmo::render_synth(req, std::cerr);
  return kOk;
}

int calib_check(const std::string& config, const std::string& out) {
  const ipmo::RunConfig cfg = ipmo::load_run_config(config);
  if (!cfg.calibration) throw ipmo::ConfigError("calib-check: no calibration section in " + config);
  const ipmo::Json report = ipmo::calibration_report(*cfg.calibration, cfg.pipeline.detection);
  if (!out.empty()) {
    ipmo::fs::create_directories(out);
    ipmo::write_json_file(ipmo::fs::path(out) / "calibration_report.json", report);
  }
  std::cout << report.dump(2) << '\n';
  return report.at("ok").get<bool>() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-plane obstacle detection and avoidance planning"};
  app.require_subcommand(1);

  std::string config, out, emit, pred, truth;
  int frames = 0;
  double match_dist = ipmo::kDefaultMatchDistance;
  std::uint64_t seed = 2026;

  auto* det = app.add_subcommand("detect", "Run detection and planning over the configured input");
  det->add_option("--config", config, "Run configuration (JSON)")->required();
  det->add_option("--out", out, "Output directory (overrides the config)");
  det->add_option("--emit", emit, "Comma list: annotated,masks,birdview,json,metrics");
  det->add_option("--frames", frames, "Process at most N frames")->check(CLI::NonNegativeNumber);

  auto* ev = app.add_subcommand("eval", "Score predictions against ground truth");
  ev->add_option("--pred", pred, "detections.json or a directory of frame records")->required();
  ev->add_option("--truth", truth, "truth.json written by synth")->required();
  ev->add_option("--match-dist", match_dist, "Match radius in metres")->check(CLI::PositiveNumber);
  ev->add_option("--out", out, "Directory for eval.json");

  auto* syn = app.add_subcommand("synth", "Render synthetic frames with ground truth");
  syn->add_option("--config", config, "Run configuration whose input.scene is rendered (default: built-in corpus)");
  syn->add_option("--out", out, "Output directory")->required();
  syn->add_option("--frames", frames, "Number of frames")->check(CLI::NonNegativeNumber);
  syn->add_option("--seed", seed, "Corpus seed");

  auto* cal = app.add_subcommand("calib-check", "Round-trip and horizon diagnostics for a calibration");
  cal->add_option("--config", config, "Run configuration with a calibration section")->required();
  cal->add_option("--out", out, "Directory for calibration_report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*det) return detect(config, out, emit, frames);
    if (*ev) return eval(pred, truth, match_dist, out);
    if (*syn) return synth(config, out, frames, seed);
    return calib_check(config, out);
  } catch (const ipmo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ipmo::FrameMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ipmo::HorizonNotInFrame& e) {
    std::cerr << "error: calibration: " << e.what() << '\n';
    return kInputError;
  } catch (const ipmo::DegenerateProjection& e) {
    std::cerr << "error: calibration: " << e.what() << '\n';
    return kInputError;
  } catch (const ipmo::fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
}
