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

#include "reusedetect/similarity.h"

#include <algorithm>

namespace reusedetect {

std::size_t LcsLength(std::span<const OpClass> a, std::span<const OpClass> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;  // row[j-1] from the previous i
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::pair<std::size_t, std::size_t>> LcsAlignment(
    std::span<const OpClass> a, std::span<const OpClass> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // suffix[i][j] = LCS of a[i..] and b[j..], so the walk below can go
  // forward and prefer early matches.
  std::vector<std::size_t> suffix((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return suffix[i * (m + 1) + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1
                              : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j] && at(i, j) == at(i + 1, j + 1) + 1) {
      pairs.emplace_back(i, j);
      ++i;
      ++j;
    } else if (at(i, j + 1) >= at(i + 1, j)) {
      ++j;
    } else {
      ++i;
    }
  }
  return pairs;
}

double SimOps(std::span<const OpClass> a, std::span<const OpClass> b) {
  if (a.empty() && b.empty()) return 1.0;
  const double lcs = static_cast<double>(LcsLength(a, b));
  return 2.0 * lcs / static_cast<double>(a.size() + b.size());
}

double SimMbp(const Mbp& a, const Mbp& b) { return SimOps(a.ops, b.ops); }

BestMatch MaxScore(const Mbp& target, std::span<const Mbp> candidates) {
  BestMatch best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double s = SimMbp(target, candidates[k]);
    if (best.index == static_cast<std::size_t>(-1) || s > best.score) {
      best = {s, k};
      if (s == 1.0) break;
    }
  }
  return best;
}

double SimMbpSet(std::span<const Mbp> target, std::span<const Mbp> candidate) {
  if (target.empty()) return candidate.empty() ? 1.0 : 0.0;
  if (candidate.empty()) return 0.0;
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& mbp : target) {
    const double w = static_cast<double>(mbp.ops.size());
    weighted += w * MaxScore(mbp, candidate).score;
    total += w;
  }
  if (total == 0.0) {
    double sum = 0.0;
    for (const auto& mbp : target) sum += MaxScore(mbp, candidate).score;
    return sum / static_cast<double>(target.size());
  }
  return weighted / total;
}

}  // namespace reusedetect
