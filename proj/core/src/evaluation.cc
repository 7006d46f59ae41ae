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

#include "reusedetect/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "reusedetect/error.h"

namespace reusedetect {
namespace {

double Ratio(std::size_t num, std::size_t den, bool* undefined) {
  if (den == 0) {
    *undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

GroundTruth ParseGroundTruth(const Json& document) {
  ObjectReader root(document, "",
                    {"target", "candidate", "pairs",
                     "reused_library_function_ids"});
  GroundTruth truth;
  truth.target_program = root.String("target");
  truth.candidate_program = root.String("candidate");
  const bool has_pairs = root.Has("pairs");
  const bool has_ids = root.Has("reused_library_function_ids");
  if (has_pairs == has_ids) {
    throw ValidationError("", "expected exactly one of \"pairs\" or "
                              "\"reused_library_function_ids\"");
  }
  if (has_pairs) {
    const Json& pairs = root.Array("pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto p = ExpectStringArray(pairs[i], IndexPath("pairs", i));
      if (p.size() != 2) {
        throw ValidationError(IndexPath("pairs", i), "expected [target, candidate]");
      }
      truth.pairs.insert({p[0], p[1]});
    }
  } else {
    for (auto& id : root.StringArray("reused_library_function_ids")) {
      truth.pairs.insert({id, id});
    }
  }
  return truth;
}

GroundTruth LoadGroundTruth(const std::string& path) {
  return ParseGroundTruth(ParseJsonText(ReadTextFile(path), path));
}

Metrics MetricsFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                          std::size_t tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  m.universe_size = tp + fp + fn + tn;
  m.precision = Ratio(tp, tp + fp, &m.precision_undefined);
  m.recall = Ratio(tp, tp + fn, &m.recall_undefined);
  // 2PR/(P+R) rewritten over counts, which avoids rounding in P*R.
  if (tp == 0) {
    m.f1_undefined = true;
    m.f1 = 0.0;
  } else {
    m.f1 = static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
  }
  m.fpr = Ratio(fp, fp + tn, &m.fpr_undefined);
  m.fnr = Ratio(fn, tp + fn, &m.fnr_undefined);
  return m;
}

Metrics ScoreAgainstTruth(const DetectionResult& result,
                          const GroundTruth& truth) {
  if (truth.target_program != result.target_program ||
      truth.candidate_program != result.candidate_program) {
    throw IntegrityError("ground truth labels '" + truth.target_program +
                         "' vs '" + truth.candidate_program +
                         "' but the result compares '" + result.target_program +
                         "' vs '" + result.candidate_program + "'");
  }
  const std::size_t universe =
      result.target_functions.size() * result.candidate_functions.size();
  if (universe != result.total_pair_count) {
    throw IntegrityError("result universe does not match its total_pair_count");
  }
  auto contains = [](const std::vector<std::string>& ids, const std::string& id) {
    return std::binary_search(ids.begin(), ids.end(), id);
  };
  for (const auto& p : truth.pairs) {
    if (!contains(result.target_functions, p.target) ||
        !contains(result.candidate_functions, p.candidate)) {
      throw IntegrityError("labeled pair ('" + p.target + "', '" + p.candidate +
                           "') is outside the developer-function pair space");
    }
  }
  std::size_t tp = 0;
  for (const auto& m : result.matched) {
    if (truth.pairs.contains(m.pair)) ++tp;
  }
  const std::size_t fp = result.matched.size() - tp;
  const std::size_t fn = truth.pairs.size() - tp;
  return MetricsFromCounts(tp, fp, fn, universe - tp - fp - fn);
}

double ReductionRatio(const DetectionResult& result) {
  if (result.total_pair_count == 0) {
    throw std::domain_error("reduction ratio undefined: no function pairs");
  }
  const double ratio = 1.0 - static_cast<double>(result.comparison_count) /
                                 static_cast<double>(result.total_pair_count);
  return std::clamp(ratio, 0.0, 1.0);
}

Json SerializeMetrics(const Metrics& m, const DetectionResult& result) {
  Json doc;
  doc["target"] = result.target_program;
  doc["candidate"] = result.candidate_program;
  doc["universe"] = "developer-function pairs";
  doc["universe_size"] = m.universe_size;
  doc["tp"] = m.tp;
  doc["fp"] = m.fp;
  doc["fn"] = m.fn;
  doc["tn"] = m.tn;
  doc["precision"] = m.precision;
  doc["recall"] = m.recall;
  doc["f1"] = m.f1;
  doc["fpr"] = m.fpr;
  doc["fnr"] = m.fnr;
  Json undefined = Json::array();
  if (m.precision_undefined) undefined.push_back("precision");
  if (m.recall_undefined) undefined.push_back("recall");
  if (m.f1_undefined) undefined.push_back("f1");
  if (m.fpr_undefined) undefined.push_back("fpr");
  if (m.fnr_undefined) undefined.push_back("fnr");
  doc["undefined"] = std::move(undefined);
  doc["program_similarity"] = result.program_similarity;
  if (result.total_pair_count > 0) {
    doc["reduction_ratio"] = ReductionRatio(result);
  } else {
    doc["reduction_ratio"] = nullptr;
  }
  return doc;
}

std::string MetricsCsvHeader() {
  return "target,candidate,tp,fp,fn,tn,precision,recall,f1,fpr,fnr,"
         "program_similarity,reduction_ratio";
}

std::string MetricsCsvRow(const Metrics& m, const DetectionResult& result) {
  std::string row = result.target_program + "," + result.candidate_program +
                    "," + std::to_string(m.tp) + "," + std::to_string(m.fp) +
                    "," + std::to_string(m.fn) + "," + std::to_string(m.tn) +
                    "," + Fixed(m.precision) + "," + Fixed(m.recall) + "," +
                    Fixed(m.f1) + "," + Fixed(m.fpr) + "," + Fixed(m.fnr) +
                    "," + Fixed(result.program_similarity) + ",";
  if (result.total_pair_count > 0) row += Fixed(ReductionRatio(result));
  return row;
}

}  // namespace reusedetect
