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

#include "reusedetect/mbp.h"

#include <algorithm>
#include <numeric>

namespace reusedetect {

std::vector<std::string> MbpNotes::Flags() const {
  std::vector<std::string> flags;
  if (isolated_block) flags.emplace_back("isolated-block-mbp");
  if (synthetic_initial) flags.emplace_back("synthetic-initial-node");
  if (cycle_truncated) flags.emplace_back("cycle-truncated");
  return flags;
}

std::vector<BlockPath> ExtractMbps(const Cfg& cfg, MbpNotes* notes) {
  const std::size_t n = cfg.size();
  MbpNotes local;
  std::vector<bool> covered(n, false);
  std::vector<std::vector<std::size_t>> paths;

  // Walks forward from `start` along `first`, continuing while the current
  // block has exactly one successor.
  auto walk = [&](std::size_t start, std::size_t first) {
    std::vector<std::size_t> path{start};
    std::vector<bool> on_path(n, false);
    on_path[start] = true;
    std::size_t next = first;
    while (true) {
      if (on_path[next] && cfg.out_degree(next) == 1) {
        local.cycle_truncated = true;
        break;
      }
      path.push_back(next);
      on_path[next] = true;
      if (cfg.out_degree(next) != 1) break;
      next = cfg.successors(next).front();
    }
    for (std::size_t b : path) covered[b] = true;
    paths.push_back(std::move(path));
  };

  auto extract = [&](std::size_t start) {
    if (cfg.out_degree(start) == 0) {
      local.isolated_block = true;
      covered[start] = true;
      paths.push_back({start});
      return;
    }
    for (std::size_t succ : cfg.successors(start)) walk(start, succ);
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cfg.block(a).id < cfg.block(b).id;
  });

  for (std::size_t v : order) {
    if (cfg.in_degree(v) == 0 || cfg.out_degree(v) > 1) extract(v);
  }
  // Whatever is still uncovered lies on a cycle of single-successor blocks
  // that no initial node reaches.
  for (std::size_t v : order) {
    if (covered[v]) continue;
    local.synthetic_initial = true;
    extract(v);
  }

  std::vector<BlockPath> out;
  out.reserve(paths.size());
  for (const auto& path : paths) {
    BlockPath ids;
    ids.reserve(path.size());
    for (std::size_t b : path) ids.push_back(cfg.block(b).id);
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  if (notes != nullptr) *notes = local;
  return out;
}

}  // namespace reusedetect
