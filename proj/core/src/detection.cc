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

#include "reusedetect/detection.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "reusedetect/error.h"
#include "reusedetect/parallel.h"
#include "reusedetect/similarity.h"

namespace reusedetect {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

constexpr std::array<std::string_view, 3> kOriginNames = {
    "identical-instructions", "library-call", "intent-search"};

std::size_t IndexOrThrow(const FunctionCallGraph& fcg, std::string_view id,
                         const char* side) {
  auto index = fcg.IndexOf(id);
  if (!index) {
    throw std::out_of_range(std::string(side) + " function '" +
                            std::string(id) + "' is not in the call graph");
  }
  return *index;
}

}  // namespace

std::string_view ToString(MatchOrigin origin) {
  return kOriginNames[static_cast<std::size_t>(origin)];
}

std::optional<MatchOrigin> MatchOriginFromString(std::string_view token) {
  for (std::size_t i = 0; i < kOriginNames.size(); ++i) {
    if (kOriginNames[i] == token) return static_cast<MatchOrigin>(i);
  }
  return std::nullopt;
}

std::vector<AnchorPair> RecognizeAnchors(const ProgramBirthmark& target,
                                         const ProgramBirthmark& candidate) {
  std::vector<AnchorPair> anchors;

  std::map<std::vector<OpClass>, std::vector<std::string>> by_ops;
  for (const auto& id : candidate.dev_ids) {
    by_ops[candidate.function_marks.at(id).flat_ops].push_back(id);
  }
  for (const auto& id : target.dev_ids) {
    auto it = by_ops.find(target.function_marks.at(id).flat_ops);
    if (it == by_ops.end()) continue;
    for (const auto& c : it->second) {
      anchors.push_back({{id, c}, MatchOrigin::kIdenticalInstructions});
    }
  }

  std::map<std::string, std::string> candidate_libs;  // name -> id
  for (const auto& [id, name] : candidate.lib_names) {
    candidate_libs.emplace(name, id);
  }
  std::vector<AnchorPair> library;
  for (const auto& [id, name] : target.lib_names) {
    auto it = candidate_libs.find(name);
    if (it != candidate_libs.end()) {
      library.push_back({{id, it->second}, MatchOrigin::kLibraryCall});
    }
  }
  auto by_pair = [](const AnchorPair& a, const AnchorPair& b) {
    return a.pair < b.pair;
  };
  std::sort(anchors.begin(), anchors.end(), by_pair);
  std::sort(library.begin(), library.end(), by_pair);
  anchors.insert(anchors.end(), library.begin(), library.end());
  return anchors;
}

MatchState::MatchState(const ProgramBirthmark& target,
                       const ProgramBirthmark& candidate)
    : target_(&target),
      candidate_(&candidate),
      target_partner_(target.fcg.size(), kNone),
      candidate_partner_(candidate.fcg.size(), kNone),
      priority_(target.fcg.size(), 0) {}

bool MatchState::Accept(const std::string& target_id,
                        const std::string& candidate_id, double score,
                        MatchOrigin origin) {
  const std::size_t t = IndexOrThrow(target_->fcg, target_id, "target");
  const std::size_t c = IndexOrThrow(candidate_->fcg, candidate_id, "candidate");
  if (target_partner_[t] != kNone || candidate_partner_[c] != kNone) {
    return false;
  }
  target_partner_[t] = c;
  candidate_partner_[c] = t;
  for (std::size_t n : target_->fcg.Neighbors(t)) ++priority_[n];
  pairs_.push_back({{target_id, candidate_id}, score, origin});
  return true;
}

bool MatchState::IsTargetMatched(std::string_view target_id) const {
  auto t = target_->fcg.IndexOf(target_id);
  return t && target_partner_[*t] != kNone;
}

bool MatchState::IsCandidateMatched(std::string_view candidate_id) const {
  auto c = candidate_->fcg.IndexOf(candidate_id);
  return c && candidate_partner_[*c] != kNone;
}

std::optional<std::string> MatchState::PartnerOf(
    std::string_view target_id) const {
  auto t = target_->fcg.IndexOf(target_id);
  if (!t || target_partner_[*t] == kNone) return std::nullopt;
  return candidate_->fcg.node(target_partner_[*t]).id;
}

std::size_t MatchState::Priority(std::string_view target_id) const {
  return priority_[IndexOrThrow(target_->fcg, target_id, "target")];
}

std::vector<std::string> MatchState::Frontier() const {
  std::vector<std::size_t> open;
  for (std::size_t t = 0; t < priority_.size(); ++t) {
    if (priority_[t] > 0 && target_partner_[t] == kNone &&
        target_->fcg.node(t).kind == FunctionKind::kDeveloper) {
      open.push_back(t);
    }
  }
  // Index order is id order, so a stable sort keeps id tie-breaking.
  std::stable_sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) {
    return priority_[a] > priority_[b];
  });
  std::vector<std::string> ids;
  ids.reserve(open.size());
  for (std::size_t t : open) ids.push_back(target_->fcg.node(t).id);
  return ids;
}

std::vector<FunctionPair> IntentSearch(const MatchState& state,
                                       const std::string& target_id,
                                       const FunctionCallGraph& target_fcg,
                                       const FunctionCallGraph& candidate_fcg) {
  const auto f = target_fcg.IndexOf(target_id);
  if (!f) return {};

  std::set<std::size_t> pre;
  for (std::size_t p : target_fcg.predecessors(*f)) {
    auto partner = state.PartnerOf(target_fcg.node(p).id);
    if (!partner) continue;
    auto a = candidate_fcg.IndexOf(*partner);
    if (!a) continue;
    for (std::size_t b : candidate_fcg.successors(*a)) pre.insert(b);
  }
  std::set<std::size_t> suc;
  for (std::size_t s : target_fcg.successors(*f)) {
    auto partner = state.PartnerOf(target_fcg.node(s).id);
    if (!partner) continue;
    auto d = candidate_fcg.IndexOf(*partner);
    if (!d) continue;
    for (std::size_t b : candidate_fcg.predecessors(*d)) suc.insert(b);
  }

  std::vector<std::size_t> ff;
  if (!pre.empty() && !suc.empty()) {
    std::set_intersection(pre.begin(), pre.end(), suc.begin(), suc.end(),
                          std::back_inserter(ff));
  } else {
    std::set_union(pre.begin(), pre.end(), suc.begin(), suc.end(),
                   std::back_inserter(ff));
  }

  std::vector<FunctionPair> out;
  for (std::size_t c : ff) {
    const std::string& id = candidate_fcg.node(c).id;
    if (state.IsCandidateMatched(id)) continue;
    out.push_back({target_id, id});
  }
  return out;
}

void SimilarityConfig::Validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("similarity threshold must lie in [0, 1], got " +
                                std::to_string(threshold));
  }
}

DetectionResult Detect(const ProgramBirthmark& target,
                       const ProgramBirthmark& candidate,
                       const SimilarityConfig& config) {
  config.Validate();
  DetectionResult result;
  result.target_program = target.program_id;
  result.candidate_program = candidate.program_id;
  result.threshold = config.threshold;
  result.target_functions = target.dev_ids;
  result.candidate_functions = candidate.dev_ids;
  result.total_pair_count = target.dev_ids.size() * candidate.dev_ids.size();

  MatchState state(target, candidate);
  for (const auto& anchor : RecognizeAnchors(target, candidate)) {
    const double score =
        anchor.origin == MatchOrigin::kIdenticalInstructions ? 1.0 : 0.0;
    state.Accept(anchor.pair.target, anchor.pair.candidate, score,
                 anchor.origin);
  }

  // A target is re-explored only when its priority has grown since the last
  // visit.
  std::map<std::string, std::size_t> explored_at;
  std::map<FunctionPair, double> score_cache;
  while (true) {
    std::optional<std::string> next;
    for (const auto& id : state.Frontier()) {
      auto it = explored_at.find(id);
      if (it == explored_at.end() || state.Priority(id) > it->second) {
        next = id;
        break;
      }
    }
    if (!next) break;
    explored_at[*next] = state.Priority(*next);

    std::vector<FunctionPair> ff =
        IntentSearch(state, *next, target.fcg, candidate.fcg);
    std::erase_if(ff, [&](const FunctionPair& p) {
      return !candidate.IsDeveloper(p.candidate);
    });
    if (config.max_candidates_per_function > 0 &&
        ff.size() > config.max_candidates_per_function) {
      ff.resize(config.max_candidates_per_function);
    }

    std::vector<FunctionPair> pending;
    for (const auto& p : ff) {
      if (!score_cache.contains(p)) pending.push_back(p);
    }
    std::vector<double> scores(pending.size());
    ParallelFor(pending.size(), config.parallelism, [&](std::size_t i) {
      scores[i] = SimMbpSet(target.function_marks.at(pending[i].target).mbps,
                            candidate.function_marks.at(pending[i].candidate).mbps);
    });
    result.comparison_count += pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      score_cache.emplace(pending[i], scores[i]);
    }

    const FunctionPair* best = nullptr;
    double best_score = -1.0;
    for (const auto& p : ff) {
      const double s = score_cache.at(p);
      if (s > best_score) {
        best = &p;
        best_score = s;
      }
    }
    if (best != nullptr && best_score >= config.threshold) {
      state.Accept(best->target, best->candidate, best_score,
                   MatchOrigin::kIntentSearch);
    }
  }

  for (const auto& m : state.pairs()) {
    if (m.origin == MatchOrigin::kLibraryCall) {
      result.library_anchors.push_back(m.pair);
    } else {
      result.matched.push_back(m);
    }
  }
  std::sort(result.matched.begin(), result.matched.end(),
            [](const MatchedPair& a, const MatchedPair& b) {
              return a.pair < b.pair;
            });
  std::sort(result.library_anchors.begin(), result.library_anchors.end());
  if (!candidate.dev_ids.empty()) {
    result.program_similarity = static_cast<double>(result.matched.size()) /
                                static_cast<double>(candidate.dev_ids.size());
  }
  for (const auto& id : target.dev_ids) {
    if (!state.IsTargetMatched(id) && !explored_at.contains(id)) {
      result.unexplored.push_back(id);
    }
  }
  return result;
}

Json SerializeDetectionResult(const DetectionResult& result) {
  Json doc;
  doc["format"] = kResultFormat;
  doc["version"] = kResultVersion;
  doc["target"] = result.target_program;
  doc["candidate"] = result.candidate_program;
  doc["threshold"] = result.threshold;
  Json matched = Json::array();
  for (const auto& m : result.matched) {
    matched.push_back(Json{{"t", m.pair.target},
                           {"c", m.pair.candidate},
                           {"score", m.score},
                           {"origin", ToString(m.origin)}});
  }
  doc["matched"] = std::move(matched);
  Json libs = Json::array();
  for (const auto& p : result.library_anchors) {
    libs.push_back(Json{{"t", p.target}, {"c", p.candidate}});
  }
  doc["library_anchors"] = std::move(libs);
  doc["program_similarity"] = result.program_similarity;
  doc["comparison_count"] = result.comparison_count;
  doc["total_pair_count"] = result.total_pair_count;
  doc["universe"] = Json{{"target", result.target_functions},
                         {"candidate", result.candidate_functions}};
  doc["unexplored"] = result.unexplored;
  return doc;
}

DetectionResult ParseDetectionResult(const Json& document) {
  ObjectReader root(document, "",
                    {"format", "version", "target", "candidate", "threshold",
                     "matched", "library_anchors", "program_similarity",
                     "comparison_count", "total_pair_count", "universe",
                     "unexplored"});
  if (root.String("format") != kResultFormat) {
    throw ValidationError("format", "not a reusedetect detection result");
  }
  if (root.Unsigned("version") != static_cast<std::uint64_t>(kResultVersion)) {
    throw ValidationError("version", "unsupported result version " +
                                         root.Required("version").dump());
  }
  DetectionResult result;
  result.target_program = root.String("target");
  result.candidate_program = root.String("candidate");
  result.threshold = root.Number("threshold");
  const Json& matched = root.Array("matched");
  for (std::size_t i = 0; i < matched.size(); ++i) {
    ObjectReader m(matched[i], IndexPath("matched", i),
                   {"t", "c", "score", "origin"});
    MatchedPair pair;
    pair.pair = {m.String("t"), m.String("c")};
    pair.score = m.Number("score");
    const std::string origin = m.String("origin");
    auto parsed = MatchOriginFromString(origin);
    if (!parsed || *parsed == MatchOrigin::kLibraryCall) {
      throw ValidationError(m.Child("origin"), "invalid origin '" + origin + "'");
    }
    pair.origin = *parsed;
    result.matched.push_back(std::move(pair));
  }
  const Json& libs = root.Array("library_anchors");
  for (std::size_t i = 0; i < libs.size(); ++i) {
    ObjectReader l(libs[i], IndexPath("library_anchors", i), {"t", "c"});
    result.library_anchors.push_back({l.String("t"), l.String("c")});
  }
  result.program_similarity = root.Number("program_similarity");
  result.comparison_count = root.Unsigned("comparison_count");
  result.total_pair_count = root.Unsigned("total_pair_count");
  ObjectReader universe(root.Required("universe"), "universe",
                        {"target", "candidate"});
  result.target_functions = universe.StringArray("target");
  result.candidate_functions = universe.StringArray("candidate");
  result.unexplored = root.StringArray("unexplored");
  return result;
}

DetectionResult LoadDetectionResult(const std::string& path) {
  return ParseDetectionResult(ParseJsonText(ReadTextFile(path), path));
}

}  // namespace reusedetect
