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

#include "reusedetect/birthmark.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "reusedetect/error.h"
#include "reusedetect/parallel.h"

namespace reusedetect {
namespace {

FunctionBirthmark BuildMark(const FunctionRecord& function,
                            std::vector<std::string> library_calls,
                            const LiftingTable& table) {
  FunctionBirthmark mark;
  mark.function_id = function.id;
  mark.name = function.name;
  std::sort(library_calls.begin(), library_calls.end());
  library_calls.erase(std::unique(library_calls.begin(), library_calls.end()),
                      library_calls.end());
  mark.library_calls = std::move(library_calls);
  if (!function.cfg) return mark;
  const Cfg& cfg = *function.cfg;

  MbpNotes notes;
  for (auto& path : ExtractMbps(cfg, &notes)) {
    std::vector<Instruction> stream;
    for (const auto& block_id : path) {
      const auto& insns = cfg.block(*cfg.IndexOf(block_id)).instructions;
      stream.insert(stream.end(), insns.begin(), insns.end());
    }
    Mbp mbp;
    mbp.raw_len = stream.size();
    mbp.ops = Normalize(stream, table);
    mbp.block_ids = std::move(path);
    mark.mbps.push_back(std::move(mbp));
  }
  mark.notes = notes.Flags();

  std::vector<Instruction> all;
  for (const auto& block : cfg.blocks()) {
    all.insert(all.end(), block.instructions.begin(), block.instructions.end());
  }
  mark.flat_ops = Normalize(all, table);
  return mark;
}

Json OpsToJson(const std::vector<OpClass>& ops) {
  Json out = Json::array();
  for (OpClass op : ops) out.push_back(ToString(op));
  return out;
}

std::vector<OpClass> OpsFromJson(const Json& node, const std::string& path) {
  std::vector<OpClass> ops;
  auto tokens = ExpectStringArray(node, path);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto op = OpClassFromString(tokens[i]);
    if (!op || *op == OpClass::kJump) {
      throw ValidationError(IndexPath(path, i),
                            "invalid operation class '" + tokens[i] + "'");
    }
    ops.push_back(*op);
  }
  return ops;
}

}  // namespace

const FunctionBirthmark* ProgramBirthmark::Find(
    const std::string& function_id) const {
  auto it = function_marks.find(function_id);
  return it == function_marks.end() ? nullptr : &it->second;
}

FunctionBirthmark BuildFunctionBirthmark(const FunctionRecord& function,
                                         const ProgramIr& program,
                                         const LiftingTable& table) {
  std::vector<std::string> library_calls;
  for (const auto& edge : program.call_edges) {
    if (edge.caller != function.id) continue;
    const FunctionRecord* callee = program.Find(edge.callee);
    if (callee != nullptr && callee->kind == FunctionKind::kLibrary) {
      library_calls.push_back(callee->name);
    }
  }
  return BuildMark(function, std::move(library_calls), table);
}

ProgramBirthmark BuildBirthmark(const ProgramIr& program,
                                const LiftingTable& table,
                                const BirthmarkOptions& options) {
  ProgramBirthmark bm;
  bm.program_id = program.program_id;
  bm.fcg = BuildFcg(program);

  std::unordered_map<std::string, const FunctionRecord*> by_id;
  for (const auto& fn : program.functions) by_id.emplace(fn.id, &fn);
  std::unordered_map<std::string, std::vector<std::string>> lib_calls;
  for (const auto& edge : program.call_edges) {
    const FunctionRecord* callee = by_id.at(edge.callee);
    if (callee->kind == FunctionKind::kLibrary) {
      lib_calls[edge.caller].push_back(callee->name);
    }
  }

  std::vector<const FunctionRecord*> dev;
  for (const auto& fn : program.functions) {
    if (fn.kind == FunctionKind::kDeveloper) {
      dev.push_back(&fn);
    } else {
      bm.lib_names.emplace(fn.id, fn.name);
    }
  }
  std::sort(dev.begin(), dev.end(),
            [](const FunctionRecord* a, const FunctionRecord* b) {
              return a->id < b->id;
            });

  std::vector<FunctionBirthmark> marks(dev.size());
  ParallelFor(dev.size(), options.parallelism, [&](std::size_t i) {
    auto it = lib_calls.find(dev[i]->id);
    marks[i] = BuildMark(*dev[i],
                         it == lib_calls.end() ? std::vector<std::string>{}
                                               : it->second,
                         table);
  });
  for (auto& mark : marks) {
    bm.dev_ids.push_back(mark.function_id);
    bm.function_marks.emplace(mark.function_id, std::move(mark));
  }
  return bm;
}

Json SerializeBirthmark(const ProgramBirthmark& bm) {
  Json doc;
  doc["format"] = kBirthmarkFormat;
  doc["version"] = kBirthmarkVersion;
  doc["program_id"] = bm.program_id;
  Json functions = Json::array();
  for (const auto& node : bm.fcg.nodes()) {
    functions.push_back(
        Json{{"id", node.id}, {"name", node.name}, {"kind", ToString(node.kind)}});
  }
  doc["functions"] = std::move(functions);
  Json edges = Json::array();
  for (const auto& [from, to] : bm.fcg.Edges()) edges.push_back(Json{from, to});
  doc["call_edges"] = std::move(edges);
  Json marks = Json::array();
  for (const auto& id : bm.dev_ids) {
    const FunctionBirthmark& mark = bm.function_marks.at(id);
    Json mbps = Json::array();
    for (const auto& mbp : mark.mbps) {
      mbps.push_back(Json{{"blocks", mbp.block_ids},
                          {"ops", OpsToJson(mbp.ops)},
                          {"raw_len", mbp.raw_len}});
    }
    Json m;
    m["id"] = id;
    m["mbps"] = std::move(mbps);
    m["flat_ops"] = OpsToJson(mark.flat_ops);
    m["library_calls"] = mark.library_calls;
    m["notes"] = mark.notes;
    marks.push_back(std::move(m));
  }
  doc["marks"] = std::move(marks);
  return doc;
}

ProgramBirthmark ParseBirthmark(const Json& document) {
  ObjectReader root(document, "",
                    {"format", "version", "program_id", "functions",
                     "call_edges", "marks"});
  if (root.String("format") != kBirthmarkFormat) {
    throw ValidationError("format", "not a reusedetect birthmark document");
  }
  if (root.Unsigned("version") != static_cast<std::uint64_t>(kBirthmarkVersion)) {
    throw ValidationError("version", "unsupported birthmark version " +
                                         root.Required("version").dump());
  }
  ProgramBirthmark bm;
  bm.program_id = root.String("program_id");

  std::vector<FunctionCallGraph::Node> nodes;
  const Json& functions = root.Array("functions");
  for (std::size_t i = 0; i < functions.size(); ++i) {
    ObjectReader fn(functions[i], IndexPath("functions", i),
                    {"id", "name", "kind"});
    FunctionCallGraph::Node node{fn.String("id"), fn.String("name"),
                                 FunctionKind::kDeveloper};
    const std::string kind = fn.String("kind");
    if (kind == "lib") {
      node.kind = FunctionKind::kLibrary;
      bm.lib_names.emplace(node.id, node.name);
    } else if (kind != "dev") {
      throw ValidationError(fn.Child("kind"), "expected \"dev\" or \"lib\"");
    }
    nodes.push_back(std::move(node));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  const Json& edge_array = root.Array("call_edges");
  for (std::size_t i = 0; i < edge_array.size(); ++i) {
    auto pair = ExpectStringArray(edge_array[i], IndexPath("call_edges", i));
    if (pair.size() != 2) {
      throw ValidationError(IndexPath("call_edges", i),
                            "expected [caller, callee]");
    }
    edges.emplace_back(pair[0], pair[1]);
  }
  bm.fcg = FunctionCallGraph(std::move(nodes), edges);

  const Json& marks = root.Array("marks");
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const std::string path = IndexPath("marks", i);
    ObjectReader m(marks[i], path,
                   {"id", "mbps", "flat_ops", "library_calls", "notes"});
    FunctionBirthmark mark;
    mark.function_id = m.String("id");
    auto index = bm.fcg.IndexOf(mark.function_id);
    if (!index || bm.fcg.node(*index).kind != FunctionKind::kDeveloper) {
      throw ValidationError(m.Child("id"), "'" + mark.function_id +
                                               "' is not a developer function");
    }
    mark.name = bm.fcg.node(*index).name;
    const Json& mbps = m.Array("mbps");
    for (std::size_t k = 0; k < mbps.size(); ++k) {
      ObjectReader p(mbps[k], IndexPath(m.Child("mbps"), k),
                     {"blocks", "ops", "raw_len"});
      Mbp mbp;
      mbp.block_ids = p.StringArray("blocks");
      if (mbp.block_ids.empty()) {
        throw ValidationError(p.Child("blocks"), "MBP has no blocks");
      }
      mbp.ops = OpsFromJson(p.Required("ops"), p.Child("ops"));
      mbp.raw_len = p.Unsigned("raw_len");
      mark.mbps.push_back(std::move(mbp));
    }
    mark.flat_ops = OpsFromJson(m.Required("flat_ops"), m.Child("flat_ops"));
    mark.library_calls = m.StringArray("library_calls");
    mark.notes = m.StringArray("notes");
    if (bm.function_marks.contains(mark.function_id)) {
      throw ValidationError(m.Child("id"), "duplicate mark");
    }
    bm.function_marks.emplace(mark.function_id, std::move(mark));
  }
  for (const auto& node : bm.fcg.nodes()) {
    if (node.kind != FunctionKind::kDeveloper) continue;
    if (!bm.function_marks.contains(node.id)) {
      throw ValidationError("marks", "developer function '" + node.id +
                                         "' has no birthmark");
    }
    bm.dev_ids.push_back(node.id);
  }
  return bm;
}

ProgramBirthmark LoadBirthmark(const std::string& path) {
  return ParseBirthmark(ParseJsonText(ReadTextFile(path), path));
}

}  // namespace reusedetect
