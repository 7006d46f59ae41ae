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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reusedetect/program_ir.h"

namespace reusedetect {

// High-level operation an instruction is lifted to. kJump never survives
// normalization; it exists so the table can name jump mnemonics explicitly.
enum class OpClass : std::uint8_t {
  kTransfer,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kAnd,
  kOr,
  kXor,
  kNot,
  kShift,
  kCompare,
  kCall,
  kRet,
  kAddress,
  kStackFrame,
  kFloat,
  kString,
  kNop,
  kOther,
  kJump,
};

inline constexpr std::size_t kOpClassCount = 20;

std::string_view ToString(OpClass op);
std::optional<OpClass> OpClassFromString(std::string_view token);

// mnemonic -> OpClass mapping. Text format: one "mnemonic CLASS" pair per
// line, '#' starts a comment.
class LiftingTable {
 public:
  LiftingTable() = default;

  // Throws ValidationError with "origin:line" on malformed lines, unknown
  // classes or conflicting duplicate mnemonics.
  static LiftingTable Parse(std::string_view text,
                            const std::string& origin = "<lifting-table>");
  static LiftingTable Load(const std::string& path);
  // The table compiled into the library.
  static const LiftingTable& Default();

  // Unknown mnemonics lift to kOther. Lookup is case-insensitive and falls
  // back to stripping one AT&T size suffix (b/w/l/q), so "movl" and
  // "callq" resolve like "mov" and "call".
  OpClass Lift(std::string_view mnemonic) const;
  bool Contains(std::string_view mnemonic) const;
  std::size_t size() const { return classes_.size(); }

 private:
  std::unordered_map<std::string, OpClass> classes_;
};

// Lifts each mnemonic, drops jump-class operations and collapses every
// maximal run of data-transfer operations to its first element. Operands
// are never read.
std::vector<OpClass> Normalize(std::span<const Instruction> instructions,
                               const LiftingTable& table);

// The run-collapse step on its own; a fixpoint on already-normalized input.
std::vector<OpClass> CollapseTransfers(std::span<const OpClass> ops);

}  // namespace reusedetect
