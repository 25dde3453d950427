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

#include "ipmo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "ipmo/errors.hpp"

namespace ipmo {

namespace {

double ratio(int num, int den, double empty) { return den > 0 ? static_cast<double>(num) / den : empty; }

void match_frame(const std::vector<Obstacle>& pred, const std::vector<synth::ExpectedObstacle>& truth,
                 ObstacleKind kind, double match_dist, ClassCounts& counts) {
  struct Pair {
    double dist;
    std::size_t p;
    std::size_t t;
  };
  std::vector<Pair> pairs;
  int n_pred = 0, n_truth = 0;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (pred[p].kind != kind) continue;
    ++n_pred;
    for (std::size_t t = 0; t < truth.size(); ++t) {
      if (truth[t].kind != kind) continue;
      const double d = std::hypot(pred[p].position.x - truth[t].position.x, pred[p].position.y - truth[t].position.y);
      if (d <= match_dist) pairs.push_back({d, p, t});
    }
  }
  for (const auto& t : truth) n_truth += t.kind == kind ? 1 : 0;

  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return std::tie(a.dist, a.p, a.t) < std::tie(b.dist, b.p, b.t); });
  std::vector<bool> pred_used(pred.size(), false), truth_used(truth.size(), false);
  int matched = 0;
  for (const auto& pr : pairs) {
    if (pred_used[pr.p] || truth_used[pr.t]) continue;
    pred_used[pr.p] = truth_used[pr.t] = true;
    ++matched;
    if (pred[pr.p].in_lane != truth[pr.t].in_lane) ++counts.false_position;
  }
  counts.correctly_detected += matched;
  counts.missed += n_truth - matched;
  counts.false_positive += n_pred - matched;
}

}  // namespace

double ClassCounts::detection_rate() const { return ratio(correctly_detected, correctly_detected + missed, 1.0); }
double ClassCounts::missed_rate() const { return ratio(missed, correctly_detected + missed, 0.0); }
double ClassCounts::false_positive_rate() const {
  return ratio(false_positive, correctly_detected + false_positive, 0.0);
}
double ClassCounts::false_position_rate() const { return ratio(false_position, correctly_detected, 0.0); }

ClassCounts& ClassCounts::operator+=(const ClassCounts& o) {
  correctly_detected += o.correctly_detected;
  missed += o.missed;
  false_positive += o.false_positive;
  false_position += o.false_position;
  return *this;
}

ClassCounts EvalReport::total() const {
  ClassCounts t = duck;
  t += cone;
  return t;
}

LatencyStats latency_stats(std::span<const double> latencies_ms) {
  LatencyStats s;
  s.count = static_cast<int>(latencies_ms.size());
  if (latencies_ms.empty()) return s;
  std::vector<double> sorted(latencies_ms.begin(), latencies_ms.end());
  std::sort(sorted.begin(), sorted.end());
  s.mean_ms = std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
  s.median_ms = sorted[sorted.size() / 2];
  s.p95_ms = sorted[std::min(sorted.size() - 1, static_cast<std::size_t>(std::ceil(0.95 * sorted.size())) - 1)];
  s.max_ms = sorted.back();
  return s;
}

EvalReport evaluate(std::span<const FrameRecord> predictions, std::span<const TruthFrame> truth, double match_dist) {
  std::map<long, const FrameRecord*> pred_by_frame;
  for (const auto& p : predictions) {
    if (!pred_by_frame.emplace(p.frame_index, &p).second) {
      throw FrameMismatch("duplicate prediction frame " + std::to_string(p.frame_index));
    }
  }
  std::map<long, const TruthFrame*> truth_by_frame;
  for (const auto& t : truth) {
    if (!truth_by_frame.emplace(t.frame_index, &t).second) {
      throw FrameMismatch("duplicate truth frame " + std::to_string(t.frame_index));
    }
  }
  if (pred_by_frame.size() != truth_by_frame.size()) {
    throw FrameMismatch("prediction and truth frame counts differ (" + std::to_string(pred_by_frame.size()) +
                        " vs " + std::to_string(truth_by_frame.size()) + ")");
  }

  EvalReport report;
  for (const auto& [frame, pred] : pred_by_frame) {
    const auto it = truth_by_frame.find(frame);
    if (it == truth_by_frame.end()) throw FrameMismatch("no truth for frame " + std::to_string(frame));
    match_frame(pred->obstacles, it->second->obstacles, ObstacleKind::duck, match_dist, report.duck);
    match_frame(pred->obstacles, it->second->obstacles, ObstacleKind::cone, match_dist, report.cone);
  }
  return report;
}

Json eval_report_to_json(const EvalReport& report) {
  auto counts = [](const ClassCounts& c) {
    return Json{{"correctly_detected", c.correctly_detected},
                {"missed", c.missed},
                {"false_positive", c.false_positive},
                {"false_position", c.false_position},
                {"detection_rate", c.detection_rate()},
                {"missed_rate", c.missed_rate()},
                {"false_positive_rate", c.false_positive_rate()},
                {"false_position_rate", c.false_position_rate()}};
  };
  Json j = {{"duck", counts(report.duck)}, {"cone", counts(report.cone)}, {"total", counts(report.total())}};
  if (report.latency) {
    j["latency_ms"] = {{"count", report.latency->count},
                       {"mean", report.latency->mean_ms},
                       {"median", report.latency->median_ms},
                       {"p95", report.latency->p95_ms},
                       {"max", report.latency->max_ms}};
  }
  return j;
}

}  // namespace ipmo
