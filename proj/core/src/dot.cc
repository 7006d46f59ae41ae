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

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "reusedetect/report.h"

namespace reusedetect {
namespace {

std::string Quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  out += '"';
  return out;
}

std::string Score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", score);
  return buf;
}

void EmitCluster(std::ostringstream& out, const std::string& cluster,
                 const std::string& title, const std::string& prefix,
                 const std::map<std::string, std::string>& labels,
                 const std::set<std::pair<std::string, std::string>>& edges) {
  out << "  subgraph " << cluster << " {\n";
  out << "    label=" << Quoted(title) << ";\n";
  out << "    style=rounded;\n";
  for (const auto& [id, label] : labels) {
    out << "    " << Quoted(prefix + id) << " [label=" << Quoted(label)
        << "];\n";
  }
  for (const auto& [from, to] : edges) {
    out << "    " << Quoted(prefix + from) << " -> " << Quoted(prefix + to)
        << ";\n";
  }
  out << "  }\n";
}

}  // namespace

std::string RenderDot(const ReuseReport& report) {
  std::map<std::string, std::string> target_labels;
  std::map<std::string, std::string> candidate_labels;
  for (const auto& n : report.subgraph.nodes) {
    target_labels[n.pair.target] = n.pair.target;
    candidate_labels[n.pair.candidate] = n.pair.candidate;
  }
  for (const auto& ev : report.evidence) {
    if (!ev.target_name.empty()) target_labels[ev.pair.target] = ev.target_name;
    if (!ev.candidate_name.empty()) {
      candidate_labels[ev.pair.candidate] = ev.candidate_name;
    }
  }
  std::set<std::pair<std::string, std::string>> target_edges;
  std::set<std::pair<std::string, std::string>> candidate_edges;
  for (const auto& e : report.subgraph.edges) {
    target_edges.emplace(e.from.target, e.to.target);
    candidate_edges.emplace(e.from.candidate, e.to.candidate);
  }

  std::ostringstream out;
  out << "digraph reuse {\n";
  out << "  rankdir=LR;\n";
  out << "  label=" << Quoted("similarity " + Score(report.program_similarity))
      << ";\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  EmitCluster(out, "cluster_target", "target: " + report.target_program, "t:",
              target_labels, target_edges);
  EmitCluster(out, "cluster_candidate", "candidate: " + report.candidate_program,
              "c:", candidate_labels, candidate_edges);
  for (const auto& n : report.subgraph.nodes) {
    out << "  " << Quoted("t:" + n.pair.target) << " -> "
        << Quoted("c:" + n.pair.candidate)
        << " [style=dashed, constraint=false, dir=none, label="
        << Quoted(Score(n.score)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace reusedetect
