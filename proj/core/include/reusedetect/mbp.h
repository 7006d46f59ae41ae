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

// Minimum branch paths: maximal branch-free walks that start at an initial
// node (no predecessor, or more than one successor) and end at the first
// terminal node (no successor, or more than one successor).

#include <cstddef>
#include <string>
#include <vector>

#include "reusedetect/program_ir.h"

namespace reusedetect {

using BlockPath = std::vector<std::string>;

// Conditions under which extraction leaves the strict definition.
struct MbpNotes {
  // A block with no predecessors and no successors became a one-block path.
  bool isolated_block = false;
  // A cycle with no initial node was entered from its smallest block id.
  bool synthetic_initial = false;
  // A walk ran into a cycle of single-successor blocks and stopped before
  // repeating a block.
  bool cycle_truncated = false;

  std::vector<std::string> Flags() const;
};

// Returns block paths sorted lexicographically by block id sequence.
std::vector<BlockPath> ExtractMbps(const Cfg& cfg, MbpNotes* notes = nullptr);

}  // namespace reusedetect
