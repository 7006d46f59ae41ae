// Copyright 2026 The reusedetect Authors. All Rights Reserved.
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
#include <set>
#include <string>

#include "reusedetect/detection.h"
#include "reusedetect/json_util.h"

namespace reusedetect {

// Labeled reused function pairs for one (target, candidate) program pair.
// The universe is the developer-function pair space of the detection result
// being scored.
struct GroundTruth {
  std::string target_program;
  std::string candidate_program;
  std::set<FunctionPair> pairs;

  bool operator==(const GroundTruth&) const = default;
};

// Accepts {"target", "candidate", "pairs": [[t, c], ...]} or the project form
// {"target", "candidate", "reused_library_function_ids": [...]}, where each
// listed id names the same function in both programs.
GroundTruth ParseGroundTruth(const Json& document);
GroundTruth LoadGroundTruth(const std::string& path);

struct Metrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  // Set when the ratio's denominator was zero; the value is then 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
  bool fpr_undefined = false;
  bool fnr_undefined = false;
  std::size_t universe_size = 0;

  bool operator==(const Metrics&) const = default;
};

// Confusion counts and ratios from raw counts.
Metrics MetricsFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                          std::size_t tn);

// Function-level scoring. Throws IntegrityError when the truth names other
// programs or a labeled pair lies outside the result's universe.
Metrics ScoreAgainstTruth(const DetectionResult& result,
                          const GroundTruth& truth);

// 1 - comparison_count / total_pair_count, clamped to [0, 1]. Throws
// std::domain_error when total_pair_count is zero.
double ReductionRatio(const DetectionResult& result);

Json SerializeMetrics(const Metrics& metrics, const DetectionResult& result);
std::string MetricsCsvHeader();
std::string MetricsCsvRow(const Metrics& metrics, const DetectionResult& result);

}  // namespace reusedetect
