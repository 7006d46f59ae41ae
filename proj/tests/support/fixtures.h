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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "reusedetect/evaluation.h"
#include "reusedetect/lifting.h"
#include "reusedetect/program_ir.h"

namespace reusedetect::testing {

using Rng = std::mt19937_64;

// Absolute path of a file under tests/fixtures.
std::string FixturePath(const std::string& name);

// Serializes and reparses, so in-memory programs go through validation.
ProgramIr Reparse(const ProgramIr& program);

// Arbitrary digraph without self loops over 1..max_nodes blocks named
// "B00".."Bnn", each with out-degree at most max_out.
Cfg RandomCfg(Rng& rng, std::size_t max_nodes, std::size_t max_out);

// True if some cycle consists only of blocks with exactly one successor.
bool HasSingleSuccessorCycle(const Cfg& cfg);

// Instruction stream drawn from the whole default table plus unknown
// mnemonics, with random operands.
std::vector<Instruction> RandomInstructionStream(Rng& rng, std::size_t max_len);

// Same mnemonics, fresh random operands.
std::vector<Instruction> ScrambleOperands(Rng& rng,
                                          std::vector<Instruction> stream);

// Flattened normalized ops of a developer function, in block order.
std::vector<OpClass> FlatOps(const FunctionRecord& function);

// Builds developer functions whose normalized instruction sequences are
// pairwise distinct across every call sharing `seen`.
class FunctionFactory {
 public:
  explicit FunctionFactory(std::uint64_t seed) : rng_(seed) {}

  // `callees` are ids of developer functions or library stubs; each gets a
  // call instruction in some block.
  FunctionRecord Make(const std::string& id, const std::string& name,
                      const std::vector<std::string>& callees);

  Rng& rng() { return rng_; }

 private:
  FunctionRecord Attempt(const std::string& id, const std::string& name,
                         const std::vector<std::string>& callees);
  Rng rng_;
  std::set<std::vector<OpClass>> seen_;
};

FunctionRecord LibraryStub(const std::string& name);

// Fills call_edges from each function's callee list.
void LinkCallEdges(ProgramIr& program);

struct PerturbOptions {
  bool rename_operands = true;
  bool insert_transfer_run = true;  // three data moves in one block
  bool split_block = true;          // split one block, new half appended
  bool substitute_op = false;       // swap one arithmetic mnemonic
};

// Applies the selected edits to one developer function.
FunctionRecord Perturb(Rng& rng, FunctionRecord function,
                       const PerturbOptions& options);

// A reused-library scenario: `library` is the target, `host` embeds copies
// of all library functions under the same ids.
struct ReuseFixture {
  ProgramIr library;
  ProgramIr host;
  GroundTruth truth;
};

ReuseFixture MakeReuseFixture(std::uint64_t seed, std::size_t library_functions,
                              std::size_t host_functions);

// The same scenario with every embedded library function perturbed.
ReuseFixture PerturbReuseFixture(std::uint64_t seed, ReuseFixture fixture,
                                 const PerturbOptions& options);

// Small connected program for exhaustive comparisons, plus a renamed copy in
// which roughly half the functions are perturbed.
struct SmallPair {
  ProgramIr target;
  ProgramIr candidate;
};
SmallPair MakeSmallPair(std::uint64_t seed, std::size_t dev_functions);

}  // namespace reusedetect::testing
