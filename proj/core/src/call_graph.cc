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

#include "reusedetect/call_graph.h"

#include <algorithm>

#include "reusedetect/error.h"

namespace reusedetect {

FunctionCallGraph::FunctionCallGraph(
    std::vector<Node> nodes,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second) {
      throw ValidationError("fcg", "duplicate node '" + nodes_[i].id + "'");
    }
  }
  succ_.resize(nodes_.size());
  pred_.resize(nodes_.size());
  for (const auto& [from, to] : edges) {
    auto f = IndexOf(from);
    auto t = IndexOf(to);
    if (!f || !t) {
      throw ValidationError("fcg", "edge '" + from + "' -> '" + to +
                                       "' references an unknown function");
    }
    succ_[*f].push_back(*t);
  }
  for (std::size_t i = 0; i < succ_.size(); ++i) {
    auto& s = succ_[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::size_t t : s) pred_[t].push_back(i);
  }
  // Predecessor lists fill in ascending caller order already.
}

std::optional<std::size_t> FunctionCallGraph::IndexOf(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FunctionCallGraph::Neighbors(std::size_t index) const {
  std::vector<std::size_t> out;
  std::set_union(pred_[index].begin(), pred_[index].end(),
                 succ_[index].begin(), succ_[index].end(),
                 std::back_inserter(out));
  return out;
}

bool FunctionCallGraph::HasEdge(std::size_t from, std::size_t to) const {
  return std::binary_search(succ_[from].begin(), succ_[from].end(), to);
}

std::vector<std::pair<std::string, std::string>> FunctionCallGraph::Edges()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < succ_.size(); ++i) {
    for (std::size_t t : succ_[i]) out.emplace_back(nodes_[i].id, nodes_[t].id);
  }
  return out;
}

std::size_t FunctionCallGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& s : succ_) total += s.size();
  return total;
}

FunctionCallGraph BuildFcg(const ProgramIr& program) {
  std::vector<FunctionCallGraph::Node> nodes;
  nodes.reserve(program.functions.size());
  for (const auto& fn : program.functions) {
    nodes.push_back({fn.id, fn.name, fn.kind});
  }
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(program.call_edges.size());
  for (const auto& e : program.call_edges) edges.emplace_back(e.caller, e.callee);
  return FunctionCallGraph(std::move(nodes), edges);
}

}  // namespace reusedetect
