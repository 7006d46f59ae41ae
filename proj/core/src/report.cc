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

#include "reusedetect/report.h"

#include <algorithm>
#include <set>

#include "reusedetect/error.h"
#include "reusedetect/similarity.h"

namespace reusedetect {
namespace {

Json OpsJson(const std::vector<OpClass>& ops) {
  Json out = Json::array();
  for (OpClass op : ops) out.push_back(ToString(op));
  return out;
}

Json MbpJson(const Mbp& mbp) {
  return Json{{"blocks", mbp.block_ids}, {"ops", OpsJson(mbp.ops)}};
}

Json PairJson(const FunctionPair& p) {
  return Json{{"t", p.target}, {"c", p.candidate}};
}

void CheckProvenance(const DetectionResult& result,
                     const ProgramBirthmark& target,
                     const ProgramBirthmark& candidate) {
  if (result.target_program != target.program_id ||
      result.candidate_program != candidate.program_id) {
    throw IntegrityError("result compares '" + result.target_program +
                         "' with '" + result.candidate_program +
                         "' but birthmarks are '" + target.program_id +
                         "' and '" + candidate.program_id + "'");
  }
  for (const auto& m : result.matched) {
    if (!target.IsDeveloper(m.pair.target) ||
        !candidate.IsDeveloper(m.pair.candidate)) {
      throw IntegrityError("matched pair ('" + m.pair.target + "', '" +
                           m.pair.candidate +
                           "') names a function missing from the birthmarks");
    }
  }
  for (const auto& p : result.library_anchors) {
    if (!target.lib_names.contains(p.target) ||
        !candidate.lib_names.contains(p.candidate)) {
      throw IntegrityError("library anchor ('" + p.target + "', '" +
                           p.candidate + "') is not a library stub pair");
    }
  }
}

}  // namespace

MatchedSubgraph BuildMatchedSubgraph(const std::vector<MatchedPair>& matched,
                                     const FunctionCallGraph& target_fcg,
                                     const FunctionCallGraph& candidate_fcg) {
  MatchedSubgraph graph;
  graph.nodes = matched;
  std::sort(graph.nodes.begin(), graph.nodes.end(),
            [](const MatchedPair& a, const MatchedPair& b) {
              return a.pair < b.pair;
            });
  for (const auto& from : graph.nodes) {
    auto t1 = target_fcg.IndexOf(from.pair.target);
    auto c1 = candidate_fcg.IndexOf(from.pair.candidate);
    if (!t1 || !c1) continue;
    for (const auto& to : graph.nodes) {
      auto t2 = target_fcg.IndexOf(to.pair.target);
      auto c2 = candidate_fcg.IndexOf(to.pair.candidate);
      if (!t2 || !c2) continue;
      if (target_fcg.HasEdge(*t1, *t2) && candidate_fcg.HasEdge(*c1, *c2)) {
        graph.edges.push_back({from.pair, to.pair});
      }
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  return graph;
}

AlignmentEvidence AlignFunctions(const FunctionBirthmark& target,
                                 const FunctionBirthmark& candidate,
                                 double score) {
  AlignmentEvidence ev;
  ev.pair = {target.function_id, candidate.function_id};
  ev.target_name = target.name;
  ev.candidate_name = candidate.name;
  ev.score = score;
  for (const auto& mbp : target.mbps) {
    MbpAlignment align;
    align.target = mbp;
    const Mbp* best = nullptr;
    double best_score = -1.0;
    for (const auto& other : candidate.mbps) {
      const double s = SimMbp(mbp, other);
      if (s > best_score ||
          (s == best_score && other.block_ids < best->block_ids)) {
        best = &other;
        best_score = s;
      }
    }
    if (best != nullptr) {
      align.candidate = *best;
      align.score = best_score;
      align.op_pairs = LcsAlignment(mbp.ops, best->ops);
    }
    ev.mbp_pairs.push_back(std::move(align));
  }
  return ev;
}

ReuseReport BuildReport(const DetectionResult& result,
                        const ProgramBirthmark& target,
                        const ProgramBirthmark& candidate) {
  CheckProvenance(result, target, candidate);
  ReuseReport report;
  report.target_program = result.target_program;
  report.candidate_program = result.candidate_program;
  report.threshold = result.threshold;
  report.program_similarity = result.program_similarity;
  report.subgraph = BuildMatchedSubgraph(result.matched, target.fcg, candidate.fcg);
  report.library_anchors = result.library_anchors;
  std::sort(report.library_anchors.begin(), report.library_anchors.end());
  for (const auto& node : report.subgraph.nodes) {
    report.evidence.push_back(
        AlignFunctions(*target.Find(node.pair.target),
                       *candidate.Find(node.pair.candidate), node.score));
  }
  return report;
}

Json SerializeReport(const ReuseReport& report) {
  Json doc;
  doc["format"] = "reusedetect-report";
  doc["version"] = 1;
  doc["target"] = report.target_program;
  doc["candidate"] = report.candidate_program;
  doc["threshold"] = report.threshold;
  doc["program_similarity"] = report.program_similarity;

  Json nodes = Json::array();
  for (const auto& n : report.subgraph.nodes) {
    Json node = PairJson(n.pair);
    node["score"] = n.score;
    node["origin"] = ToString(n.origin);
    nodes.push_back(std::move(node));
  }
  Json edges = Json::array();
  for (const auto& e : report.subgraph.edges) {
    edges.push_back(Json{{"from", PairJson(e.from)}, {"to", PairJson(e.to)}});
  }
  doc["subgraph"] = Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};

  Json libs = Json::array();
  for (const auto& p : report.library_anchors) libs.push_back(PairJson(p));
  doc["library_anchors"] = std::move(libs);

  Json evidence = Json::array();
  for (const auto& ev : report.evidence) {
    Json mbp_pairs = Json::array();
    for (const auto& a : ev.mbp_pairs) {
      Json entry;
      entry["target"] = MbpJson(a.target);
      entry["candidate"] = a.candidate ? MbpJson(*a.candidate) : Json(nullptr);
      entry["score"] = a.score;
      Json ops = Json::array();
      for (const auto& [i, j] : a.op_pairs) ops.push_back(Json{i, j});
      entry["op_pairs"] = std::move(ops);
      mbp_pairs.push_back(std::move(entry));
    }
    Json e = PairJson(ev.pair);
    e["target_name"] = ev.target_name;
    e["candidate_name"] = ev.candidate_name;
    e["score"] = ev.score;
    e["mbp_pairs"] = std::move(mbp_pairs);
    evidence.push_back(std::move(e));
  }
  doc["evidence"] = std::move(evidence);
  return doc;
}

}  // namespace reusedetect
