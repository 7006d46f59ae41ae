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

#include "reusedetect/program_ir.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_set>

#include "reusedetect/error.h"

namespace reusedetect {
namespace {

std::string Quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string Lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

void Warn(std::vector<std::string>* warnings, std::string message) {
  if (warnings != nullptr) warnings->push_back(std::move(message));
}

Instruction ParseInstruction(const Json& node, const std::string& path) {
  ObjectReader reader(node, path, {"m", "ops", "addr"});
  Instruction insn;
  insn.mnemonic = Lowercase(reader.String("m"));
  if (insn.mnemonic.empty()) {
    throw ValidationError(reader.Child("m"), "mnemonic must be non-empty");
  }
  if (reader.Has("ops")) insn.operands = reader.StringArray("ops");
  if (reader.Has("addr")) insn.address = reader.Unsigned("addr");
  return insn;
}

BasicBlock ParseBlock(const Json& node, const std::string& path,
                      const std::string& function_id,
                      std::vector<std::string>* warnings) {
  ObjectReader reader(node, path, {"id", "insns", "succ", "stub"});
  BasicBlock block;
  block.id = reader.String("id");
  if (block.id.empty()) {
    throw ValidationError(reader.Child("id"), "block id must be non-empty");
  }
  block.stub = reader.Bool("stub", false);
  const Json& insns = reader.Array("insns");
  for (std::size_t i = 0; i < insns.size(); ++i) {
    block.instructions.push_back(
        ParseInstruction(insns[i], IndexPath(reader.Child("insns"), i)));
  }
  if (block.instructions.empty() && !block.stub) {
    throw ValidationError(reader.Child("insns"),
                          "block " + Quote(block.id) + " of function " +
                              Quote(function_id) +
                              " is empty but not flagged as a stub");
  }
  std::set<std::string> seen;
  for (auto& succ : reader.StringArray("succ")) {
    if (!seen.insert(succ).second) {
      Warn(warnings, path + ": duplicate successor " + Quote(succ) +
                         " collapsed to one edge");
      continue;
    }
    block.successors.push_back(std::move(succ));
  }
  return block;
}

FunctionRecord ParseFunction(const Json& node, const std::string& path,
                             std::vector<std::string>* warnings) {
  ObjectReader reader(node, path,
                      {"id", "name", "kind", "entry", "blocks", "callees"});
  FunctionRecord fn;
  fn.id = reader.String("id");
  if (fn.id.empty()) {
    throw ValidationError(reader.Child("id"), "function id must be non-empty");
  }
  fn.name = reader.String("name");
  const std::string kind = reader.String("kind");
  if (kind == "dev") {
    fn.kind = FunctionKind::kDeveloper;
  } else if (kind == "lib") {
    fn.kind = FunctionKind::kLibrary;
  } else {
    throw ValidationError(reader.Child("kind"),
                          "expected \"dev\" or \"lib\", got " + Quote(kind));
  }
  if (reader.Has("callees")) fn.callees = reader.StringArray("callees");

  if (fn.kind == FunctionKind::kLibrary) {
    if (reader.Has("blocks") || reader.Has("entry")) {
      throw ValidationError(path, "library function " + Quote(fn.id) +
                                      " must not carry a CFG");
    }
    return fn;
  }

  const std::string entry = reader.String("entry");
  const Json& blocks_node = reader.Array("blocks");
  if (blocks_node.empty()) {
    throw ValidationError(reader.Child("blocks"),
                          "developer function " + Quote(fn.id) +
                              " has no basic blocks");
  }
  std::vector<BasicBlock> blocks;
  std::map<std::string, std::size_t> block_index;
  std::map<std::uint64_t, std::string> addresses;
  for (std::size_t i = 0; i < blocks_node.size(); ++i) {
    const std::string block_path = IndexPath(reader.Child("blocks"), i);
    BasicBlock block = ParseBlock(blocks_node[i], block_path, fn.id, warnings);
    if (!block_index.emplace(block.id, i).second) {
      throw ValidationError(block_path + ".id",
                            "duplicate block id " + Quote(block.id) +
                                " in function " + Quote(fn.id));
    }
    for (std::size_t k = 0; k < block.instructions.size(); ++k) {
      const auto& addr = block.instructions[k].address;
      if (!addr) continue;
      auto [it, inserted] = addresses.emplace(*addr, block.id);
      if (!inserted) {
        throw ValidationError(
            IndexPath(block_path + ".insns", k) + ".addr",
            "address " + std::to_string(*addr) + " already used in block " +
                Quote(it->second) + " of function " + Quote(fn.id));
      }
    }
    blocks.push_back(std::move(block));
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t k = 0; k < blocks[i].successors.size(); ++k) {
      const std::string& succ = blocks[i].successors[k];
      if (!block_index.contains(succ)) {
        throw ValidationError(
            IndexPath(IndexPath(reader.Child("blocks"), i) + ".succ", k),
            "dangling successor " + Quote(succ) + " of block " +
                Quote(blocks[i].id) + " in function " + Quote(fn.id));
      }
    }
  }
  if (!block_index.contains(entry)) {
    throw ValidationError(reader.Child("entry"),
                          "entry block " + Quote(entry) +
                              " does not exist in function " + Quote(fn.id));
  }
  fn.cfg.emplace(fn.id, std::move(blocks), entry);
  return fn;
}

}  // namespace

Cfg::Cfg(std::string function_id, std::vector<BasicBlock> blocks,
         std::string entry)
    : function_id_(std::move(function_id)),
      blocks_(std::move(blocks)),
      entry_(std::move(entry)) {
  const std::string where = "function " + Quote(function_id_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (!index_.emplace(blocks_[i].id, i).second) {
      throw ValidationError(where, "duplicate block id " + Quote(blocks_[i].id));
    }
  }
  if (!index_.contains(entry_)) {
    throw ValidationError(where, "entry block " + Quote(entry_) + " missing");
  }
  succ_.resize(blocks_.size());
  pred_.resize(blocks_.size());
  auto by_id = [this](std::size_t a, std::size_t b) {
    return blocks_[a].id < blocks_[b].id;
  };
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (const auto& succ : blocks_[i].successors) {
      auto it = index_.find(succ);
      if (it == index_.end()) {
        throw ValidationError(where, "dangling successor " + Quote(succ) +
                                         " of block " + Quote(blocks_[i].id));
      }
      succ_[i].push_back(it->second);
    }
    std::sort(succ_[i].begin(), succ_[i].end(), by_id);
    succ_[i].erase(std::unique(succ_[i].begin(), succ_[i].end()),
                   succ_[i].end());
    for (std::size_t s : succ_[i]) pred_[s].push_back(i);
  }
  for (auto& preds : pred_) std::sort(preds.begin(), preds.end(), by_id);
}

std::optional<std::size_t> Cfg::IndexOf(std::string_view block_id) const {
  auto it = index_.find(std::string(block_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Cfg::edge_count() const {
  std::size_t total = 0;
  for (const auto& s : succ_) total += s.size();
  return total;
}

std::string_view ToString(FunctionKind kind) {
  return kind == FunctionKind::kDeveloper ? "dev" : "lib";
}

const FunctionRecord* ProgramIr::Find(std::string_view function_id) const {
  for (const auto& fn : functions) {
    if (fn.id == function_id) return &fn;
  }
  return nullptr;
}

ProgramIr ParseProgramIr(const Json& document,
                         std::vector<std::string>* warnings) {
  ObjectReader root(document, "", {"program_id", "functions"});
  ProgramIr program;
  program.program_id = root.String("program_id");
  if (program.program_id.empty()) {
    throw ValidationError("program_id", "program id must be non-empty");
  }

  const Json& functions = root.Array("functions");
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const std::string path = IndexPath("functions", i);
    FunctionRecord fn = ParseFunction(functions[i], path, warnings);
    if (!by_id.emplace(fn.id, i).second) {
      throw ValidationError(path + ".id", "duplicate function id " +
                                              Quote(fn.id));
    }
    program.functions.push_back(std::move(fn));
  }

  std::map<std::string, std::string> library_by_name;
  for (std::size_t i = 0; i < program.functions.size(); ++i) {
    const auto& fn = program.functions[i];
    if (fn.kind != FunctionKind::kLibrary) continue;
    auto [it, inserted] = library_by_name.emplace(fn.name, fn.id);
    if (!inserted) {
      throw ValidationError(IndexPath("functions", i) + ".name",
                            "library name " + Quote(fn.name) +
                                " already declared by " + Quote(it->second));
    }
  }

  for (std::size_t i = 0; i < program.functions.size(); ++i) {
    auto& fn = program.functions[i];
    std::vector<std::string> kept;
    for (std::size_t k = 0; k < fn.callees.size(); ++k) {
      const std::string& callee = fn.callees[k];
      const std::string path = IndexPath(IndexPath("functions", i) + ".callees", k);
      if (!callee.empty() && callee.front() == kIndirectCalleePrefix) {
        Warn(warnings, path + ": indirect call " + Quote(callee) +
                           " in function " + Quote(fn.id) + " dropped");
        continue;
      }
      std::string resolved;
      if (by_id.contains(callee)) {
        resolved = callee;
      } else if (auto it = library_by_name.find(callee);
                 it != library_by_name.end()) {
        resolved = it->second;
      } else {
        throw ValidationError(path, "callee " + Quote(callee) + " of function " +
                                        Quote(fn.id) +
                                        " resolves to no function or library "
                                        "declaration");
      }
      program.call_edges.push_back({fn.id, std::move(resolved)});
      kept.push_back(callee);
    }
    fn.callees = std::move(kept);
  }
  return program;
}

ProgramIr ParseProgramIrText(std::string_view text,
                             std::vector<std::string>* warnings) {
  return ParseProgramIr(ParseJsonText(text, "<ir>"), warnings);
}

ProgramIr LoadProgramIr(const std::string& path,
                        std::vector<std::string>* warnings) {
  return ParseProgramIr(ParseJsonText(ReadTextFile(path), path), warnings);
}

Json SerializeProgramIr(const ProgramIr& program) {
  Json functions = Json::array();
  for (const auto& fn : program.functions) {
    Json node;
    node["id"] = fn.id;
    node["name"] = fn.name;
    node["kind"] = ToString(fn.kind);
    if (fn.cfg) {
      node["entry"] = fn.cfg->entry();
      Json blocks = Json::array();
      for (const auto& block : fn.cfg->blocks()) {
        Json b;
        b["id"] = block.id;
        Json insns = Json::array();
        for (const auto& insn : block.instructions) {
          Json i;
          i["m"] = insn.mnemonic;
          i["ops"] = insn.operands;
          if (insn.address) i["addr"] = *insn.address;
          insns.push_back(std::move(i));
        }
        b["insns"] = std::move(insns);
        b["succ"] = block.successors;
        if (block.stub) b["stub"] = true;
        blocks.push_back(std::move(b));
      }
      node["blocks"] = std::move(blocks);
    }
    node["callees"] = fn.callees;
    functions.push_back(std::move(node));
  }
  Json doc;
  doc["program_id"] = program.program_id;
  doc["functions"] = std::move(functions);
  return doc;
}

}  // namespace reusedetect
