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

#include "reusedetect/lifting.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "default_lifting_table.h"
#include "reusedetect/error.h"

namespace reusedetect {
namespace {

constexpr std::array<std::string_view, kOpClassCount> kOpClassNames = {
    "TRANSFER", "ADD",     "SUB",      "MUL",        "DIV",
    "AND",      "OR",      "XOR",      "NOT",        "SHIFT",
    "COMPARE",  "CALL",    "RET",      "ADDRESS",    "STACKFRAME",
    "FLOAT",    "STRING",  "NOP",      "OTHER",      "JUMP",
};

std::string Lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view ToString(OpClass op) {
  return kOpClassNames[static_cast<std::size_t>(op)];
}

std::optional<OpClass> OpClassFromString(std::string_view token) {
  for (std::size_t i = 0; i < kOpClassNames.size(); ++i) {
    if (kOpClassNames[i] == token) return static_cast<OpClass>(i);
  }
  return std::nullopt;
}

LiftingTable LiftingTable::Parse(std::string_view text,
                                 const std::string& origin) {
  LiftingTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string mnemonic, cls, extra;
    if (!(fields >> mnemonic)) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (!(fields >> cls) || (fields >> extra)) {
      throw ValidationError(where, "expected 'mnemonic CLASS'");
    }
    auto op = OpClassFromString(cls);
    if (!op) throw ValidationError(where, "unknown operation class '" + cls + "'");
    auto [it, inserted] = table.classes_.emplace(Lowercase(mnemonic), *op);
    if (!inserted && it->second != *op) {
      throw ValidationError(where, "mnemonic '" + mnemonic +
                                       "' already mapped to " +
                                       std::string(ToString(it->second)));
    }
  }
  return table;
}

LiftingTable LiftingTable::Load(const std::string& path) {
  return Parse(ReadTextFile(path), path);
}

const LiftingTable& LiftingTable::Default() {
  static const LiftingTable kTable =
      Parse(internal::kDefaultLiftingTable, "<builtin lifting table>");
  return kTable;
}

OpClass LiftingTable::Lift(std::string_view mnemonic) const {
  const std::string key = Lowercase(mnemonic);
  if (auto it = classes_.find(key); it != classes_.end()) return it->second;
  if (key.size() > 1) {
    const char suffix = key.back();
    if (suffix == 'b' || suffix == 'w' || suffix == 'l' || suffix == 'q') {
      auto it = classes_.find(key.substr(0, key.size() - 1));
      if (it != classes_.end()) return it->second;
    }
  }
  return OpClass::kOther;
}

bool LiftingTable::Contains(std::string_view mnemonic) const {
  return classes_.contains(Lowercase(mnemonic));
}

std::vector<OpClass> Normalize(std::span<const Instruction> instructions,
                               const LiftingTable& table) {
  std::vector<OpClass> out;
  out.reserve(instructions.size());
  for (const auto& insn : instructions) {
    const OpClass op = table.Lift(insn.mnemonic);
    if (op == OpClass::kJump) continue;
    // Jumps are gone before this check, so transfers on either side of a
    // jump still merge.
    if (op == OpClass::kTransfer && !out.empty() &&
        out.back() == OpClass::kTransfer) {
      continue;
    }
    out.push_back(op);
  }
  return out;
}

std::vector<OpClass> CollapseTransfers(std::span<const OpClass> ops) {
  std::vector<OpClass> out;
  out.reserve(ops.size());
  for (OpClass op : ops) {
    if (op == OpClass::kTransfer && !out.empty() &&
        out.back() == OpClass::kTransfer) {
      continue;
    }
    out.push_back(op);
  }
  return out;
}

}  // namespace reusedetect
