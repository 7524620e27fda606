// Copyright 2026 The SynFix Authors
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

#ifndef SYNFIX_CLI_H_
#define SYNFIX_CLI_H_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synfix/container.h"
#include "synfix/corpus.h"
#include "synfix/synfix.h"

namespace synfix {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFixedOtherLine = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNoFix = 4;

// ---- evaluation ------------------------------------------------------------

struct EvalRecord {
  Program program;
  bool already_valid = false;
  RepairResult result;                        // unset when already valid
  std::optional<std::array<RepairResult, 5>> cells;  // --all-methods only
  bool sound = true;  // CompletelyFixed re-parses / residual on a later line
};

struct StatusCounts {
  int completely_fixed = 0;
  int fixed_other = 0;
  int no_fix = 0;
  int total() const { return completely_fixed + fixed_other + no_fix; }
  void Add(RepairStatus s);
};

struct EvalReport {
  std::vector<EvalRecord> records;  // sorted by id
  int incorrect_attempts = 0;
  int already_valid = 0;
  StatusCounts totals;
  // First-success cell per program, keyed "Strategy@Endpoint".
  std::map<std::string, StatusCounts> by_method;
  std::map<std::string, StatusCounts> by_mutation_kind;
  // Independent per-cell outcomes (--all-methods); cells may overlap.
  std::map<std::string, StatusCounts> all_methods;
  int unsound = 0;
};

// Repairs every program independently on `threads` workers. The report does
// not depend on the thread count or on input order.
EvalReport Evaluate(const std::vector<Program>& programs, const SequenceModel& model,
                    const Vocabulary& vocab, const RepairConfig& config,
                    int threads = 1, bool all_methods = false);

// One JSON object per line: a "result" record per program in id order, then
// a "summary" record echoing the configuration.
std::string ReportJsonLines(const EvalReport& report, const ModelContainer& model,
                            const RepairConfig& config);
std::string ReportTable(const EvalReport& report, double wall_seconds);

// Checks one result against the soundness invariants.
bool IsSound(const RepairResult& r);

// ---- subcommands -----------------------------------------------------------

struct TrainOptions {
  std::filesystem::path corpus;
  std::filesystem::path out;
  ModelConfig model;  // vocab_size is filled in from the corpus
  TrainHyper hyper;
  int threshold = 4;
};

struct FixOptions {
  std::filesystem::path model;
  std::filesystem::path submission;
  std::optional<std::filesystem::path> output;  // repaired source
  RepairConfig repair;
};

struct EvalOptions {
  std::filesystem::path model;
  std::filesystem::path buggy;
  std::optional<std::filesystem::path> report;  // JSON lines
  RepairConfig repair;
  int threads = 1;
  bool all_methods = false;
};

struct GenOptions {
  std::string family;
  int n = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out;  // directory, or a .jsonl file
};

struct MutateOptions {
  std::filesystem::path corpus;
  std::filesystem::path out;  // .jsonl
  std::uint64_t seed = 0;
  std::optional<MutationKind> kind;  // default: cycle through all kinds
  bool include_first_line = false;
};

struct SplitOptions {
  std::filesystem::path corpus;
  std::size_t train_size = 0;
  std::uint64_t seed = 0;
  std::filesystem::path train_out;
  std::filesystem::path test_out;
};

// Each returns the process exit code; diagnostics go to `err`.
int CmdTrain(const TrainOptions& o, std::ostream& out, std::ostream& err);
int CmdFix(const FixOptions& o, std::ostream& out, std::ostream& err);
int CmdEval(const EvalOptions& o, std::ostream& out, std::ostream& err);
int CmdGen(const GenOptions& o, std::ostream& out, std::ostream& err);
int CmdMutate(const MutateOptions& o, std::ostream& out, std::ostream& err);
int CmdSplit(const SplitOptions& o, std::ostream& out, std::ostream& err);

// Training stream: programs tokenized and encoded back to back.
std::vector<TokenId> EncodeCorpus(const std::vector<Program>& programs,
                                  const Vocabulary& vocab);
Vocabulary CorpusVocab(const std::vector<Program>& programs, int threshold);

}  // namespace synfix

#endif  // SYNFIX_CLI_H_
