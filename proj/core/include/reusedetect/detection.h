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

// Reuse detection. Anchors seed a priority-driven loop that grows the
// matching through both call graphs.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reusedetect/birthmark.h"
#include "reusedetect/json_util.h"

namespace reusedetect {

struct FunctionPair {
  std::string target;
  std::string candidate;

  bool operator==(const FunctionPair&) const = default;
  auto operator<=>(const FunctionPair&) const = default;
};

enum class MatchOrigin {
  kIdenticalInstructions,  // anchor: equal normalized instruction sequences
  kLibraryCall,            // anchor: same library call on both sides
  kIntentSearch,           // found from matched neighbors
};

std::string_view ToString(MatchOrigin origin);
std::optional<MatchOrigin> MatchOriginFromString(std::string_view token);

struct AnchorPair {
  FunctionPair pair;
  MatchOrigin origin = MatchOrigin::kIdenticalInstructions;

  bool operator==(const AnchorPair&) const = default;
};

struct MatchedPair {
  FunctionPair pair;
  double score = 0.0;
  MatchOrigin origin = MatchOrigin::kIntentSearch;

  bool operator==(const MatchedPair&) const = default;
};

// Every developer pair with identical flat_ops and every library stub pair
// sharing a name. Not one-to-one: a function may appear in several pairs.
// Sorted: identical-instruction anchors first, then library anchors, each by
// (target, candidate).
std::vector<AnchorPair> RecognizeAnchors(const ProgramBirthmark& target,
                                         const ProgramBirthmark& candidate);

// Mutable matching state. One-to-one over function ids; priority(f) is the
// number of distinct call-graph neighbors of target function f that are
// already matched (library anchors included).
class MatchState {
 public:
  MatchState(const ProgramBirthmark& target, const ProgramBirthmark& candidate);

  // Records (t, c) unless either side is already matched. Returns whether
  // the pair was recorded.
  bool Accept(const std::string& target_id, const std::string& candidate_id,
              double score, MatchOrigin origin);

  bool IsTargetMatched(std::string_view target_id) const;
  bool IsCandidateMatched(std::string_view candidate_id) const;
  std::optional<std::string> PartnerOf(std::string_view target_id) const;
  std::size_t Priority(std::string_view target_id) const;

  // Unmatched developer functions of the target with priority > 0, highest
  // priority first, ties by function id.
  std::vector<std::string> Frontier() const;

  // Every recorded pair (anchors included) in acceptance order.
  const std::vector<MatchedPair>& pairs() const { return pairs_; }

 private:
  const ProgramBirthmark* target_;
  const ProgramBirthmark* candidate_;
  std::vector<std::size_t> target_partner_;    // by target fcg index
  std::vector<std::size_t> candidate_partner_;  // by candidate fcg index
  std::vector<std::size_t> priority_;           // by target fcg index
  std::vector<MatchedPair> pairs_;
};

// Candidate pairs for `target_id` proposed by its matched call-graph
// neighbors. Pre: (f, succ(partner(p))) for matched predecessors p of f.
// Suc: (f, pred(partner(s))) for matched successors s. The result is
// Pre ∩ Suc when both are non-empty, Pre ∪ Suc otherwise, minus candidates
// that are already matched. Sorted by candidate id.
std::vector<FunctionPair> IntentSearch(const MatchState& state,
                                       const std::string& target_id,
                                       const FunctionCallGraph& target_fcg,
                                       const FunctionCallGraph& candidate_fcg);

struct SimilarityConfig {
  double threshold = 0.5;  // a pair matches when its score >= threshold
  // Upper bound on scored pairs per exploration; 0 means unbounded.
  std::size_t max_candidates_per_function = 0;
  unsigned parallelism = 0;  // scoring workers; 0 picks hardware concurrency

  // Throws std::invalid_argument when threshold is outside [0, 1].
  void Validate() const;
};

struct DetectionResult {
  std::string target_program;
  std::string candidate_program;
  double threshold = 0.5;
  // Developer pairs only, sorted by target id. Library anchors are kept
  // apart: they guide the search but carry no MBP score.
  std::vector<MatchedPair> matched;
  std::vector<FunctionPair> library_anchors;
  double program_similarity = 0.0;  // |matched| / |candidate dev functions|
  std::size_t comparison_count = 0;  // MBP-set comparisons performed
  std::size_t total_pair_count = 0;  // |target dev| * |candidate dev|
  std::vector<std::string> target_functions;     // developer ids, sorted
  std::vector<std::string> candidate_functions;  // developer ids, sorted
  // Unmatched target functions the search never reached.
  std::vector<std::string> unexplored;

  bool operator==(const DetectionResult&) const = default;
};

DetectionResult Detect(const ProgramBirthmark& target,
                       const ProgramBirthmark& candidate,
                       const SimilarityConfig& config = {});

inline constexpr std::string_view kResultFormat = "reusedetect-result";
inline constexpr int kResultVersion = 1;

Json SerializeDetectionResult(const DetectionResult& result);
DetectionResult ParseDetectionResult(const Json& document);
DetectionResult LoadDetectionResult(const std::string& path);

}  // namespace reusedetect
