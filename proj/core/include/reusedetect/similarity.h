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
#include <span>
#include <utility>
#include <vector>

#include "reusedetect/birthmark.h"
#include "reusedetect/lifting.h"

namespace reusedetect {

// Length of the longest common subsequence, O(|a|*|b|) time, O(|b|) space.
std::size_t LcsLength(std::span<const OpClass> a, std::span<const OpClass> b);

// One longest common subsequence as (index in a, index in b) pairs, strictly
// increasing in both coordinates. Among equal-length alignments the one that
// matches earliest in `a` is returned.
std::vector<std::pair<std::size_t, std::size_t>> LcsAlignment(
    std::span<const OpClass> a, std::span<const OpClass> b);

// 2 * lcs / (|a| + |b|); two empty sequences are identical (1.0).
double SimOps(std::span<const OpClass> a, std::span<const OpClass> b);
double SimMbp(const Mbp& a, const Mbp& b);

// Best SimMbp of `target` against every element of `candidates` and the
// index that achieved it (first index on ties). Empty candidates give
// {0.0, npos}.
struct BestMatch {
  double score = 0.0;
  std::size_t index = static_cast<std::size_t>(-1);
};
BestMatch MaxScore(const Mbp& target, std::span<const Mbp> candidates);

// Length-weighted mean of MaxScore over the target MBP set. Directional:
// reads as "how much of the target function is found in the candidate".
// Both sets empty -> 1.0; target empty, candidate not -> 0.0; candidate
// empty -> 0.0. If every target MBP has an empty op sequence, weights are
// uniform.
double SimMbpSet(std::span<const Mbp> target, std::span<const Mbp> candidate);

}  // namespace reusedetect
