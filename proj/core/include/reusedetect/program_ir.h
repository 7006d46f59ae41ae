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

// Disassembly intermediate representation: the neutral JSON document a
// disassembler front-end produces and the rest of the pipeline consumes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reusedetect/json_util.h"

namespace reusedetect {

struct Instruction {
  std::string mnemonic;               // lowercase, non-empty
  std::vector<std::string> operands;  // opaque; never inspected by analysis
  std::optional<std::uint64_t> address;

  bool operator==(const Instruction&) const = default;
};

struct BasicBlock {
  std::string id;
  std::vector<Instruction> instructions;
  std::vector<std::string> successors;
  // Synthetic entry/exit blocks are the only ones allowed to be empty.
  bool stub = false;

  bool operator==(const BasicBlock&) const = default;
};

// Control flow graph of one function. Blocks keep document order; edges are
// resolved to indices at construction and duplicate successors collapse.
class Cfg {
 public:
  Cfg() = default;
  // Throws ValidationError on dangling successors, duplicate block ids or a
  // missing entry block.
  Cfg(std::string function_id, std::vector<BasicBlock> blocks,
      std::string entry);

  const std::string& function_id() const { return function_id_; }
  const std::string& entry() const { return entry_; }
  const std::vector<BasicBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  std::optional<std::size_t> IndexOf(std::string_view block_id) const;
  const BasicBlock& block(std::size_t index) const { return blocks_[index]; }

  // Successor/predecessor indices, sorted by block id and free of duplicates.
  const std::vector<std::size_t>& successors(std::size_t index) const {
    return succ_[index];
  }
  const std::vector<std::size_t>& predecessors(std::size_t index) const {
    return pred_[index];
  }
  std::size_t in_degree(std::size_t index) const { return pred_[index].size(); }
  std::size_t out_degree(std::size_t index) const {
    return succ_[index].size();
  }
  std::size_t edge_count() const;

  bool operator==(const Cfg& other) const {
    return function_id_ == other.function_id_ && entry_ == other.entry_ &&
           blocks_ == other.blocks_;
  }

 private:
  std::string function_id_;
  std::vector<BasicBlock> blocks_;
  std::string entry_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
};

enum class FunctionKind { kDeveloper, kLibrary };

std::string_view ToString(FunctionKind kind);

struct FunctionRecord {
  std::string id;
  std::string name;
  FunctionKind kind = FunctionKind::kDeveloper;
  std::optional<Cfg> cfg;  // present iff kind == kDeveloper
  // Function ids or library-call names, as written in the document.
  std::vector<std::string> callees;

  bool operator==(const FunctionRecord&) const = default;
};

struct CallEdge {
  std::string caller;
  std::string callee;  // resolved function id

  bool operator==(const CallEdge&) const = default;
  auto operator<=>(const CallEdge&) const = default;
};

struct ProgramIr {
  std::string program_id;
  std::vector<FunctionRecord> functions;  // document order
  std::vector<CallEdge> call_edges;       // one per resolved callee entry

  const FunctionRecord* Find(std::string_view function_id) const;

  bool operator==(const ProgramIr&) const = default;
};

// Callee entries starting with this character name indirect call sites with
// no static target. They are dropped with a warning.
inline constexpr char kIndirectCalleePrefix = '*';

// Parses and validates an IR document. Non-fatal findings (dropped indirect
// calls, collapsed duplicate successors) are appended to `warnings`.
ProgramIr ParseProgramIr(const Json& document,
                         std::vector<std::string>* warnings = nullptr);
ProgramIr ParseProgramIrText(std::string_view text,
                             std::vector<std::string>* warnings = nullptr);
ProgramIr LoadProgramIr(const std::string& path,
                        std::vector<std::string>* warnings = nullptr);

Json SerializeProgramIr(const ProgramIr& program);

}  // namespace reusedetect
