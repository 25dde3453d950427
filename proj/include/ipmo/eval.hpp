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
#include <span>
#include <vector>

#include "ipmo/serialization.hpp"

namespace ipmo {

// Per-class outcome counts with the usual rate definitions:
// detection and missed rates over the truth count, false-positive rate over
// all predictions, false-position rate over correct detections.
struct ClassCounts {
  int correctly_detected = 0;
  int missed = 0;
  int false_positive = 0;
  int false_position = 0;

  double detection_rate() const;
  double missed_rate() const;
  double false_positive_rate() const;
  double false_position_rate() const;

  ClassCounts& operator+=(const ClassCounts& o);
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct LatencyStats {
  int count = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
};

LatencyStats latency_stats(std::span<const double> latencies_ms);

struct EvalReport {
  ClassCounts duck;
  ClassCounts cone;
  std::optional<LatencyStats> latency;

  ClassCounts total() const;
};

inline constexpr double kDefaultMatchDistance = 0.05;

// Greedy nearest matching per frame and class within match_dist. A matched
// prediction with the wrong in-lane flag still counts as detected and also
// as a false position. Throws FrameMismatch when the two sets of frame
// indices differ.
EvalReport evaluate(std::span<const FrameRecord> predictions, std::span<const TruthFrame> truth,
                    double match_dist = kDefaultMatchDistance);

Json eval_report_to_json(const EvalReport& report);

}  // namespace ipmo
