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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reusedetect/program_ir.h"

namespace reusedetect {

// Simple directed caller -> callee graph over every function of a program,
// library stubs included. Nodes are ordered by function id; repeated call
// sites collapse to one edge.
class FunctionCallGraph {
 public:
  struct Node {
    std::string id;
    std::string name;
    FunctionKind kind = FunctionKind::kDeveloper;

    bool operator==(const Node&) const = default;
  };

  FunctionCallGraph() = default;
  // Edges are (caller id, callee id). Throws ValidationError if an endpoint
  // is not among `nodes` or node ids repeat.
  FunctionCallGraph(std::vector<Node> nodes,
                    const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t index) const { return nodes_[index]; }
  std::optional<std::size_t> IndexOf(std::string_view id) const;
  bool Contains(std::string_view id) const { return IndexOf(id).has_value(); }

  // Sorted by callee/caller index, which is also function id order.
  const std::vector<std::size_t>& successors(std::size_t index) const {
    return succ_[index];
  }
  const std::vector<std::size_t>& predecessors(std::size_t index) const {
    return pred_[index];
  }
  // Predecessors and successors merged, without duplicates.
  std::vector<std::size_t> Neighbors(std::size_t index) const;
  bool HasEdge(std::size_t from, std::size_t to) const;

  // All edges as (caller id, callee id), sorted.
  std::vector<std::pair<std::string, std::string>> Edges() const;
  std::size_t edge_count() const;

  bool operator==(const FunctionCallGraph& other) const {
    return nodes_ == other.nodes_ && succ_ == other.succ_;
  }

 private:
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
};

FunctionCallGraph BuildFcg(const ProgramIr& program);

}  // namespace reusedetect
