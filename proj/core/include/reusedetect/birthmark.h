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

// Three-level birthmark of a program: call graph at the function level,
// minimum branch paths at the block level, normalized operation sequences at
// the instruction level.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "reusedetect/call_graph.h"
#include "reusedetect/json_util.h"
#include "reusedetect/lifting.h"
#include "reusedetect/mbp.h"
#include "reusedetect/program_ir.h"

namespace reusedetect {

struct Mbp {
  BlockPath block_ids;
  std::vector<OpClass> ops;  // normalized; |mbp| is ops.size()
  std::size_t raw_len = 0;   // instruction count before normalization

  bool operator==(const Mbp&) const = default;
};

struct FunctionBirthmark {
  std::string function_id;
  std::string name;
  std::vector<Mbp> mbps;
  // Normalization of every instruction in block document order.
  std::vector<OpClass> flat_ops;
  std::vector<std::string> library_calls;  // sorted, unique
  std::vector<std::string> notes;          // MbpNotes::Flags()

  bool operator==(const FunctionBirthmark&) const = default;
};

struct ProgramBirthmark {
  std::string program_id;
  FunctionCallGraph fcg;
  std::map<std::string, FunctionBirthmark> function_marks;  // dev only
  std::vector<std::string> dev_ids;                         // sorted
  std::map<std::string, std::string> lib_names;             // id -> name

  const FunctionBirthmark* Find(const std::string& function_id) const;
  bool IsDeveloper(const std::string& function_id) const {
    return function_marks.contains(function_id);
  }

  bool operator==(const ProgramBirthmark&) const = default;
};

struct BirthmarkOptions {
  // Worker threads for per-function work; 0 picks hardware concurrency.
  unsigned parallelism = 0;
};

FunctionBirthmark BuildFunctionBirthmark(const FunctionRecord& function,
                                         const ProgramIr& program,
                                         const LiftingTable& table);

ProgramBirthmark BuildBirthmark(const ProgramIr& program,
                                const LiftingTable& table,
                                const BirthmarkOptions& options = {});

inline constexpr std::string_view kBirthmarkFormat = "reusedetect-birthmark";
inline constexpr int kBirthmarkVersion = 1;

Json SerializeBirthmark(const ProgramBirthmark& birthmark);
// Throws ValidationError on schema or version mismatch.
ProgramBirthmark ParseBirthmark(const Json& document);
ProgramBirthmark LoadBirthmark(const std::string& path);

}  // namespace reusedetect
