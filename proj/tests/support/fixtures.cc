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

#include "fixtures.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

namespace reusedetect::testing {
namespace {

const std::vector<std::string> kRegisters = {
    "rax", "rbx", "rcx", "rdx", "rsi", "rdi", "r8",  "r9",
    "r10", "r11", "eax", "ebx", "ecx", "edx", "esi", "edi"};

struct Weighted {
  const char* mnemonic;
  double weight;
};

const std::vector<Weighted> kBodyPool = {
    {"mov", 8},    {"movzx", 1},  {"lea", 2},    {"push", 1.5}, {"pop", 1},
    {"add", 3},    {"sub", 3},    {"inc", 1},    {"dec", 1},    {"imul", 1.5},
    {"xor", 2},    {"and", 1.5},  {"or", 1.5},   {"shl", 1},    {"sar", 1},
    {"shr", 1},    {"not", 0.5},  {"neg", 0.5},  {"cmp", 1},    {"test", 1},
    {"movss", 0.5}, {"addsd", 0.5}, {"mulsd", 0.5}, {"cdq", 0.5}, {"idiv", 0.7},
    {"div", 0.3},  {"setne", 0.5}, {"cmove", 0.5}, {"nop", 0.2}, {"movsb", 0.2},
};

const std::vector<std::string> kArithmetic = {"add", "sub",  "imul", "xor", "and",
                                              "or",  "shl",  "sar",  "inc", "dec",
                                              "idiv", "neg", "not"};

const std::vector<std::string> kConditionalJumps = {"je", "jne", "jg", "jle",
                                                    "jb", "jae", "js"};

const std::vector<std::string> kTransfers = {"mov", "movzx", "push", "movsx",
                                             "movq"};

// Broad mnemonic pool for stream-level properties. Jumps and AT&T suffixes
// are in here too, along with names no table knows.
const std::vector<std::string> kStreamPool = {
    "mov",   "MOV",   "movl",  "movq",   "push",  "pushq", "pop",   "xchg",
    "cmovne", "lea",  "add",   "ADD",    "addl",  "inc",   "sub",   "dec",
    "imul",  "mul",   "idiv",  "div",    "and",   "or",    "xor",   "not",
    "neg",   "shl",   "shr",   "sar",    "rol",   "cmp",   "test",  "sete",
    "call",  "callq", "ret",   "retq",   "leave", "enter", "nop",   "movss",
    "addsd", "cvtsi2sd", "movsb", "stosd", "jmp", "JMP",   "jmpq",  "je",
    "jne",   "jg",    "jl",    "loop",   "jrcxz", "ud2",   "vfmadd231ps",
    "xyzzy", "hlt",   "cpuid", "bswap",  "bt",    "cwde",  "lock cmpxchg"};

std::string RandomOperand(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  switch (kind(rng)) {
    case 0:
    case 1:
      return kRegisters[std::uniform_int_distribution<std::size_t>(
          0, kRegisters.size() - 1)(rng)];
    case 2: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "0x%x",
                    std::uniform_int_distribution<unsigned>(0, 0xffff)(rng));
      return buf;
    }
    default: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "[rbp-0x%x]",
                    8 * std::uniform_int_distribution<unsigned>(1, 32)(rng));
      return buf;
    }
  }
}

std::vector<std::string> RandomOperands(Rng& rng, std::size_t max_count) {
  std::vector<std::string> ops(
      std::uniform_int_distribution<std::size_t>(0, max_count)(rng));
  for (auto& op : ops) op = RandomOperand(rng);
  return ops;
}

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

bool Chance(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

std::size_t Uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Instruction BodyInstruction(Rng& rng) {
  static const std::discrete_distribution<std::size_t> kDist = [] {
    std::vector<double> w;
    for (const auto& e : kBodyPool) w.push_back(e.weight);
    return std::discrete_distribution<std::size_t>(w.begin(), w.end());
  }();
  auto dist = kDist;
  return {kBodyPool[dist(rng)].mnemonic, RandomOperands(rng, 2), std::nullopt};
}

std::string BlockId(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "bb%02zu", i);
  return buf;
}

std::string StubId(const std::string& name) { return "ext_" + name; }

// Position just before a block's trailing jump or return, if any.
std::size_t InsertionLimit(const BasicBlock& block) {
  if (block.instructions.empty()) return 0;
  const std::string& last = block.instructions.back().mnemonic;
  if (last == "ret" || last == "jmp" || last.front() == 'j') {
    return block.instructions.size() - 1;
  }
  return block.instructions.size();
}

}  // namespace

std::string FixturePath(const std::string& name) {
  return std::string(REUSEDETECT_FIXTURE_DIR) + "/" + name;
}

ProgramIr Reparse(const ProgramIr& program) {
  return ParseProgramIr(SerializeProgramIr(program));
}

Cfg RandomCfg(Rng& rng, std::size_t max_nodes, std::size_t max_out) {
  const std::size_t n = Uniform(rng, 1, max_nodes);
  std::vector<BasicBlock> blocks(n);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "B%02zu", i);
    blocks[i].id = buf;
    blocks[i].instructions = {{"nop", {}, std::nullopt}};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    std::shuffle(others.begin(), others.end(), rng);
    const std::size_t out = std::min(Uniform(rng, 0, max_out), others.size());
    for (std::size_t k = 0; k < out; ++k) {
      blocks[i].successors.push_back(blocks[others[k]].id);
    }
  }
  const std::string entry = blocks.front().id;
  return Cfg("f", std::move(blocks), entry);
}

bool HasSingleSuccessorCycle(const Cfg& cfg) {
  const std::size_t n = cfg.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on current chain, 2 done
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::size_t> chain;
    std::size_t v = start;
    while (state[v] == 0 && cfg.out_degree(v) == 1) {
      state[v] = 1;
      chain.push_back(v);
      v = cfg.successors(v).front();
    }
    const bool cycle = state[v] == 1;
    for (std::size_t u : chain) state[u] = 2;
    if (cycle) return true;
  }
  return false;
}

std::vector<Instruction> RandomInstructionStream(Rng& rng, std::size_t max_len) {
  std::vector<Instruction> out(Uniform(rng, 0, max_len));
  for (auto& insn : out) {
    insn.mnemonic = Pick(rng, kStreamPool);
    insn.operands = RandomOperands(rng, 3);
  }
  return out;
}

std::vector<Instruction> ScrambleOperands(Rng& rng,
                                          std::vector<Instruction> stream) {
  for (auto& insn : stream) {
    insn.operands = RandomOperands(rng, 3);
  }
  return stream;
}

std::vector<OpClass> FlatOps(const FunctionRecord& function) {
  std::vector<Instruction> all;
  for (const auto& block : function.cfg->blocks()) {
    all.insert(all.end(), block.instructions.begin(), block.instructions.end());
  }
  return Normalize(all, LiftingTable::Default());
}

FunctionRecord FunctionFactory::Make(const std::string& id,
                                     const std::string& name,
                                     const std::vector<std::string>& callees) {
  for (;;) {
    FunctionRecord fn = Attempt(id, name, callees);
    if (seen_.insert(FlatOps(fn)).second) return fn;
  }
}

FunctionRecord FunctionFactory::Attempt(const std::string& id,
                                        const std::string& name,
                                        const std::vector<std::string>& callees) {
  static const std::vector<double> kBlockCounts = {1, 3, 4, 4, 3, 2, 2, 1};
  std::discrete_distribution<std::size_t> count_dist(kBlockCounts.begin(),
                                                     kBlockCounts.end());
  const std::size_t nb = count_dist(rng_) + 1;

  std::vector<BasicBlock> blocks(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    blocks[i].id = BlockId(i);
    const std::size_t body = Uniform(rng_, 1, 6);
    for (std::size_t k = 0; k < body; ++k) {
      blocks[i].instructions.push_back(BodyInstruction(rng_));
    }
  }
  blocks.front().instructions.insert(
      blocks.front().instructions.begin(),
      {{"push", {"rbp"}, std::nullopt}, {"mov", {"rbp", "rsp"}, std::nullopt}});

  for (std::size_t i = 0; i + 1 < nb; ++i) {
    auto& block = blocks[i];
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.45) {
      block.successors = {BlockId(i + 1)};
    } else if (r < 0.88) {
      std::size_t other;
      if (i > 0 && (i + 2 >= nb || Chance(rng_, 0.2))) {
        other = Uniform(rng_, 0, i - 1);
      } else if (i + 2 < nb) {
        other = Uniform(rng_, i + 2, nb - 1);
      } else {
        block.successors = {BlockId(i + 1)};
        continue;
      }
      block.instructions.push_back(
          {Chance(rng_, 0.5) ? "cmp" : "test", RandomOperands(rng_, 2), std::nullopt});
      block.instructions.push_back(
          {Pick(rng_, kConditionalJumps), {"loc_" + BlockId(other)}, std::nullopt});
      block.successors = {BlockId(i + 1), BlockId(other)};
    } else {
      const std::size_t target = i + 2 < nb ? Uniform(rng_, i + 2, nb - 1) : i + 1;
      block.instructions.push_back({"jmp", {"loc_" + BlockId(target)}, std::nullopt});
      block.successors = {BlockId(target)};
    }
  }
  auto& last = blocks.back().instructions;
  last.push_back({Chance(rng_, 0.5) ? "leave" : "pop", {"rbp"}, std::nullopt});
  last.push_back({"ret", {}, std::nullopt});

  for (const auto& callee : callees) {
    auto& block = blocks[Uniform(rng_, 0, nb - 1)];
    const std::size_t pos = Uniform(rng_, 0, InsertionLimit(block));
    block.instructions.insert(
        block.instructions.begin() + static_cast<std::ptrdiff_t>(pos),
        {{"mov", {"edi", RandomOperand(rng_)}, std::nullopt},
         {"call", {callee}, std::nullopt}});
  }

  FunctionRecord fn;
  fn.id = id;
  fn.name = name;
  fn.kind = FunctionKind::kDeveloper;
  fn.callees = callees;
  fn.cfg = Cfg(id, std::move(blocks), BlockId(0));
  return fn;
}

FunctionRecord LibraryStub(const std::string& name) {
  FunctionRecord fn;
  fn.id = StubId(name);
  fn.name = name;
  fn.kind = FunctionKind::kLibrary;
  return fn;
}

void LinkCallEdges(ProgramIr& program) {
  program.call_edges.clear();
  for (const auto& fn : program.functions) {
    for (const auto& callee : fn.callees) {
      program.call_edges.push_back({fn.id, callee});
    }
  }
}

FunctionRecord Perturb(Rng& rng, FunctionRecord function,
                       const PerturbOptions& options) {
  std::vector<BasicBlock> blocks = function.cfg->blocks();
  if (options.rename_operands) {
    for (auto& block : blocks) {
      block.instructions = ScrambleOperands(rng, std::move(block.instructions));
    }
  }
  if (options.substitute_op) {
    std::vector<std::pair<std::size_t, std::size_t>> sites;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::size_t k = 0; k < blocks[b].instructions.size(); ++k) {
        const auto& m = blocks[b].instructions[k].mnemonic;
        if (std::find(kArithmetic.begin(), kArithmetic.end(), m) !=
            kArithmetic.end()) {
          sites.emplace_back(b, k);
        }
      }
    }
    if (!sites.empty()) {
      const auto [b, k] = Pick(rng, sites);
      auto& m = blocks[b].instructions[k].mnemonic;
      std::string replacement = m;
      while (replacement == m) replacement = Pick(rng, kArithmetic);
      m = replacement;
    }
  }
  if (options.insert_transfer_run) {
    auto& block = blocks[Uniform(rng, 0, blocks.size() - 1)];
    const std::size_t pos = Uniform(rng, 0, InsertionLimit(block));
    std::vector<Instruction> run;
    for (int k = 0; k < 3; ++k) {
      run.push_back({Pick(rng, kTransfers), RandomOperands(rng, 2), std::nullopt});
    }
    block.instructions.insert(
        block.instructions.begin() + static_cast<std::ptrdiff_t>(pos),
        run.begin(), run.end());
  }
  if (options.split_block) {
    std::vector<std::size_t> splittable;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].instructions.size() >= 2) splittable.push_back(b);
    }
    if (!splittable.empty()) {
      const std::size_t b = Pick(rng, splittable);
      const std::size_t at = Uniform(rng, 1, blocks[b].instructions.size() - 1);
      BasicBlock tail;
      tail.id = blocks[b].id + "s";
      tail.instructions.assign(
          blocks[b].instructions.begin() + static_cast<std::ptrdiff_t>(at),
          blocks[b].instructions.end());
      tail.successors = blocks[b].successors;
      blocks[b].instructions.resize(at);
      blocks[b].successors = {tail.id};
      blocks.push_back(std::move(tail));
    }
  }
  const std::string entry = function.cfg->entry();
  function.cfg = Cfg(function.id, std::move(blocks), entry);
  return function;
}

namespace {

const std::vector<std::string> kLibraryNames = {
    "BZ2_bzCompressInit", "BZ2_bzCompress",       "BZ2_bzCompressEnd",
    "BZ2_bzDecompressInit", "BZ2_bzDecompress",   "BZ2_bzDecompressEnd",
    "BZ2_blockSort",      "BZ2_hbMakeCodeLengths", "BZ2_compressBlock",
    "BZ2_decompress",     "BZ2_hbAssignCodes",    "BZ2_hbCreateDecodeTables"};

const std::vector<std::string> kLibraryStubs = {"malloc", "free", "memcpy",
                                                "memset", "abort"};
const std::vector<std::string> kHostStubs = {
    "printf", "fopen", "fclose", "fread", "fwrite", "strlen",
    "strcmp", "exit",  "getenv", "malloc", "free",  "perror"};

// Random tree over n functions rooted at 0, plus a few forward edges.
std::vector<std::vector<std::size_t>> CallShape(Rng& rng, std::size_t n,
                                                std::size_t extra) {
  std::vector<std::vector<std::size_t>> calls(n);
  for (std::size_t k = 1; k < n; ++k) calls[Uniform(rng, 0, k - 1)].push_back(k);
  for (std::size_t e = 0; e < extra && n > 2; ++e) {
    const std::size_t a = Uniform(rng, 0, n - 2);
    const std::size_t b = Uniform(rng, a + 1, n - 1);
    if (std::find(calls[a].begin(), calls[a].end(), b) == calls[a].end()) {
      calls[a].push_back(b);
    }
  }
  return calls;
}

std::vector<std::string> PickStubs(Rng& rng, const std::vector<std::string>& pool) {
  std::vector<std::string> out;
  const double r = std::uniform_real_distribution<double>(0, 1)(rng);
  const std::size_t count = r < 0.35 ? 0 : r < 0.8 ? 1 : 2;
  for (std::size_t k = 0; k < count; ++k) {
    const std::string id = StubId(Pick(rng, pool));
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  return out;
}

std::string Numbered(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%02zu", prefix, i);
  return buf;
}

}  // namespace

ReuseFixture MakeReuseFixture(std::uint64_t seed, std::size_t library_functions,
                              std::size_t host_functions) {
  FunctionFactory factory(seed);
  Rng& rng = factory.rng();
  ReuseFixture fx;

  std::set<std::string> lib_stubs_used;
  const auto lib_shape = CallShape(rng, library_functions, library_functions / 4);
  std::vector<FunctionRecord> lib_fns;
  for (std::size_t k = 0; k < library_functions; ++k) {
    std::vector<std::string> callees;
    for (std::size_t child : lib_shape[k]) callees.push_back(Numbered("lib_", child));
    for (auto& s : PickStubs(rng, kLibraryStubs)) callees.push_back(s);
    for (const auto& c : callees) {
      if (c.starts_with("ext_")) lib_stubs_used.insert(c.substr(4));
    }
    const std::string name = k < kLibraryNames.size() ? kLibraryNames[k]
                                                      : Numbered("lib_fn_", k);
    lib_fns.push_back(factory.Make(Numbered("lib_", k), name, callees));
  }

  std::set<std::string> host_stubs_used;
  const auto host_shape = CallShape(rng, host_functions, host_functions / 5);
  std::vector<FunctionRecord> host_fns;
  for (std::size_t k = 0; k < host_functions; ++k) {
    std::vector<std::string> callees;
    for (std::size_t child : host_shape[k]) callees.push_back(Numbered("host_", child));
    if (k % 7 == 3) callees.push_back(Numbered("lib_", 0));
    for (auto& s : PickStubs(rng, kHostStubs)) callees.push_back(s);
    for (const auto& c : callees) {
      if (c.starts_with("ext_")) host_stubs_used.insert(c.substr(4));
    }
    host_fns.push_back(factory.Make(Numbered("host_", k), Numbered("host_fn_", k),
                                    callees));
  }

  fx.library.program_id = "libsynth";
  fx.library.functions = lib_fns;
  for (const auto& s : lib_stubs_used) fx.library.functions.push_back(LibraryStub(s));
  LinkCallEdges(fx.library);

  fx.host.program_id = "hostsynth";
  fx.host.functions = host_fns;
  fx.host.functions.insert(fx.host.functions.end(), lib_fns.begin(), lib_fns.end());
  std::set<std::string> all_stubs = host_stubs_used;
  all_stubs.insert(lib_stubs_used.begin(), lib_stubs_used.end());
  for (const auto& s : all_stubs) fx.host.functions.push_back(LibraryStub(s));
  LinkCallEdges(fx.host);

  fx.truth.target_program = fx.library.program_id;
  fx.truth.candidate_program = fx.host.program_id;
  for (const auto& fn : lib_fns) fx.truth.pairs.insert({fn.id, fn.id});
  return fx;
}

ReuseFixture PerturbReuseFixture(std::uint64_t seed, ReuseFixture fixture,
                                 const PerturbOptions& options) {
  Rng rng(seed);
  std::set<std::string> reused;
  for (const auto& p : fixture.truth.pairs) reused.insert(p.candidate);
  for (auto& fn : fixture.host.functions) {
    if (reused.contains(fn.id)) fn = Perturb(rng, std::move(fn), options);
  }
  return fixture;
}

SmallPair MakeSmallPair(std::uint64_t seed, std::size_t dev_functions) {
  FunctionFactory factory(seed);
  Rng& rng = factory.rng();
  const auto shape = CallShape(rng, dev_functions, dev_functions / 3);
  static const std::vector<std::string> kStubs = {"malloc", "free", "memcpy",
                                                  "strlen", "printf"};
  std::set<std::string> used;
  std::vector<FunctionRecord> fns;
  for (std::size_t k = 0; k < dev_functions; ++k) {
    std::vector<std::string> callees;
    for (std::size_t child : shape[k]) callees.push_back(Numbered("t", child));
    for (auto& s : PickStubs(rng, kStubs)) callees.push_back(s);
    for (const auto& c : callees) {
      if (c.starts_with("ext_")) used.insert(c.substr(4));
    }
    fns.push_back(factory.Make(Numbered("t", k), Numbered("fn_", k), callees));
  }

  SmallPair out;
  out.target.program_id = "small_t";
  out.target.functions = fns;
  for (const auto& s : used) out.target.functions.push_back(LibraryStub(s));
  LinkCallEdges(out.target);

  std::vector<std::size_t> perm(dev_functions);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<std::string, std::string> rename;
  for (std::size_t k = 0; k < dev_functions; ++k) {
    rename[Numbered("t", k)] = Numbered("c", perm[k]);
  }
  out.candidate.program_id = "small_c";
  for (auto fn : fns) {
    const std::string new_id = rename.at(fn.id);
    for (auto& c : fn.callees) {
      if (auto it = rename.find(c); it != rename.end()) c = it->second;
    }
    fn.name = "c_" + fn.name;
    std::vector<BasicBlock> blocks = fn.cfg->blocks();
    const std::string entry = fn.cfg->entry();
    fn.cfg = Cfg(new_id, std::move(blocks), entry);
    fn.id = new_id;
    if (Chance(rng, 0.5)) {
      PerturbOptions opts;
      opts.substitute_op = Chance(rng, 0.5);
      fn = Perturb(rng, std::move(fn), opts);
    }
    out.candidate.functions.push_back(std::move(fn));
  }
  std::sort(out.candidate.functions.begin(), out.candidate.functions.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& s : used) out.candidate.functions.push_back(LibraryStub(s));
  LinkCallEdges(out.candidate);
  return out;
}

}  // namespace reusedetect::testing
