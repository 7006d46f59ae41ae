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

#include "cli.h"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "reusedetect/reusedetect.h"

namespace reusedetect::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string ir_path;
  std::string target_path;
  std::string candidate_path;
  std::string result_path;
  std::string truth_path;
  std::string out_path;
  std::string lifting_table;
  std::string format;
  bool dot = false;
  bool json = false;
  double threshold = 0.5;
  std::size_t max_candidates = 0;
  unsigned parallelism = 0;
};

void Emit(const Options& opts, const std::string& text, std::ostream& out) {
  if (opts.out_path.empty() || opts.out_path == "-") {
    out << text;
  } else {
    WriteTextFile(opts.out_path, text);
  }
}

LiftingTable ResolveLiftingTable(const Options& opts) {
  if (!opts.lifting_table.empty()) return LiftingTable::Load(opts.lifting_table);
  if (const char* env = std::getenv(kLiftingTableEnv); env != nullptr && *env) {
    return LiftingTable::Load(env);
  }
  return LiftingTable::Default();
}

int CmdBirthmark(const Options& opts, std::ostream& out, std::ostream& err) {
  const LiftingTable table = ResolveLiftingTable(opts);
  std::vector<std::string> warnings;
  const ProgramIr program = LoadProgramIr(opts.ir_path, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  BirthmarkOptions options;
  options.parallelism = opts.parallelism;
  const ProgramBirthmark bm = BuildBirthmark(program, table, options);
  Emit(opts, DumpJson(SerializeBirthmark(bm)), out);
  return kExitOk;
}

int CmdDetect(const Options& opts, std::ostream& out) {
  SimilarityConfig config;
  config.threshold = opts.threshold;
  config.max_candidates_per_function = opts.max_candidates;
  config.parallelism = opts.parallelism;
  try {
    config.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const ProgramBirthmark target = LoadBirthmark(opts.target_path);
  const ProgramBirthmark candidate = LoadBirthmark(opts.candidate_path);
  const DetectionResult result = Detect(target, candidate, config);
  Emit(opts, DumpJson(SerializeDetectionResult(result)), out);
  return kExitOk;
}

int CmdReport(const Options& opts, std::ostream& out) {
  std::string format = opts.format.empty() ? "json" : opts.format;
  if (opts.dot && opts.json) throw UsageError("--dot and --json are exclusive");
  if (opts.dot) format = "dot";
  if (opts.json) format = "json";
  const DetectionResult result = LoadDetectionResult(opts.result_path);
  const ProgramBirthmark target = LoadBirthmark(opts.target_path);
  const ProgramBirthmark candidate = LoadBirthmark(opts.candidate_path);
  const ReuseReport report = BuildReport(result, target, candidate);
  Emit(opts, format == "dot" ? RenderDot(report) : DumpJson(SerializeReport(report)),
       out);
  return kExitOk;
}

int CmdEval(const Options& opts, std::ostream& out) {
  const DetectionResult result = LoadDetectionResult(opts.result_path);
  const GroundTruth truth = LoadGroundTruth(opts.truth_path);
  const Metrics metrics = ScoreAgainstTruth(result, truth);
  if (opts.format == "csv") {
    Emit(opts, MetricsCsvHeader() + "\n" + MetricsCsvRow(metrics, result) + "\n",
         out);
  } else {
    Emit(opts, DumpJson(SerializeMetrics(metrics, result)), out);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options opts;
  CLI::App app{"Detects partial reuse between two disassembled programs.",
               "reusedetect"};
  app.require_subcommand(1);

  auto* birthmark = app.add_subcommand(
      "birthmark", "Build the three-level birthmark of an IR document");
  birthmark->add_option("ir", opts.ir_path, "IR document (JSON)")
      ->required();
  birthmark->add_option("--lifting-table", opts.lifting_table,
                        "mnemonic -> operation class table (default: $" +
                            std::string(kLiftingTableEnv) + " or built-in)");
  birthmark->add_option("--parallelism", opts.parallelism,
                        "worker threads, 0 = auto");

  auto* detect = app.add_subcommand(
      "detect", "Detect reused functions of a target inside a candidate");
  detect->add_option("target", opts.target_path, "target birthmark")
      ->required();
  detect->add_option("candidate", opts.candidate_path, "candidate birthmark")
      ->required();
  detect->add_option("--threshold", opts.threshold,
                     "minimum function similarity in [0, 1]")
      ->capture_default_str();
  detect->add_option("--max-candidates", opts.max_candidates,
                     "cap on scored pairs per exploration, 0 = unbounded");
  detect->add_option("--parallelism", opts.parallelism,
                     "worker threads, 0 = auto");

  auto* report = app.add_subcommand(
      "report", "Render matched subgraph and alignment evidence");
  report->add_option("result", opts.result_path, "detection result")
      ->required();
  report->add_option("--target", opts.target_path, "target birthmark")
      ->required();
  report->add_option("--candidate", opts.candidate_path, "candidate birthmark")
      ->required();
  report->add_option("--format", opts.format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  report->add_flag("--dot", opts.dot, "same as --format dot");
  report->add_flag("--json", opts.json, "same as --format json");

  auto* eval = app.add_subcommand(
      "eval", "Score a detection result against ground truth");
  eval->add_option("result", opts.result_path, "detection result")
      ->required();
  eval->add_option("truth", opts.truth_path, "ground-truth labels")
      ->required();
  eval->add_option("--format", opts.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  for (auto* sub : {birthmark, detect, report, eval}) {
    sub->add_option("--out,-o", opts.out_path, "output file (default stdout)");
  }

  std::vector<std::string> argv_storage{"reusedetect"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*birthmark) return CmdBirthmark(opts, out, err);
    if (*detect) return CmdDetect(opts, out);
    if (*report) return CmdReport(opts, out);
    if (*eval) return CmdEval(opts, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace reusedetect::cli
