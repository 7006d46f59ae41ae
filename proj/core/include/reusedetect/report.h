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

// Interpretable evidence for a detection result, at all three levels: the
// matched part of the call graphs, MBP pairs inside each matched function
// pair, and aligned operations inside each MBP pair.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reusedetect/birthmark.h"
#include "reusedetect/detection.h"
#include "reusedetect/json_util.h"

namespace reusedetect {

struct SubgraphEdge {
  FunctionPair from;
  FunctionPair to;

  bool operator==(const SubgraphEdge&) const = default;
  auto operator<=>(const SubgraphEdge&) const = default;
};

// Matched developer pairs plus every call edge present on both sides
// between them.
struct MatchedSubgraph {
  std::vector<MatchedPair> nodes;  // sorted by pair
  std::vector<SubgraphEdge> edges;  // sorted

  bool operator==(const MatchedSubgraph&) const = default;
};

struct MbpAlignment {
  Mbp target;
  std::optional<Mbp> candidate;  // absent when the candidate has no MBPs
  double score = 0.0;
  // LCS alignment: (index into target.ops, index into candidate->ops).
  std::vector<std::pair<std::size_t, std::size_t>> op_pairs;

  bool operator==(const MbpAlignment&) const = default;
};

struct AlignmentEvidence {
  FunctionPair pair;
  std::string target_name;
  std::string candidate_name;
  double score = 0.0;
  // One entry per target MBP, paired with its best candidate MBP.
  std::vector<MbpAlignment> mbp_pairs;

  bool operator==(const AlignmentEvidence&) const = default;
};

struct ReuseReport {
  std::string target_program;
  std::string candidate_program;
  double threshold = 0.0;
  double program_similarity = 0.0;
  MatchedSubgraph subgraph;
  std::vector<FunctionPair> library_anchors;
  std::vector<AlignmentEvidence> evidence;  // same order as subgraph.nodes

  bool operator==(const ReuseReport&) const = default;
};

// Throws IntegrityError when `result` does not come from these birthmarks.
ReuseReport BuildReport(const DetectionResult& result,
                        const ProgramBirthmark& target,
                        const ProgramBirthmark& candidate);

MatchedSubgraph BuildMatchedSubgraph(const std::vector<MatchedPair>& matched,
                                     const FunctionCallGraph& target_fcg,
                                     const FunctionCallGraph& candidate_fcg);

AlignmentEvidence AlignFunctions(const FunctionBirthmark& target,
                                 const FunctionBirthmark& candidate,
                                 double score);

Json SerializeReport(const ReuseReport& report);

// Graphviz rendering: one cluster per program, call edges of the matched
// subgraph inside each cluster, one dashed edge per matched pair labeled
// with its score to three decimals.
std::string RenderDot(const ReuseReport& report);

}  // namespace reusedetect
