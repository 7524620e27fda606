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

#ifndef SYNFIX_CORPUS_H_
#define SYNFIX_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synfix/parser.h"

namespace synfix {

enum class MutationKind {
  kDeleteToken,
  kDuplicateToken,
  kSwapAdjacentOperators,
  kEqEqToEq,
  kDropCloseParen,
  kDropColon,
  kMisspellKeyword,
  kDedentLine,
  kIndentLine,
  kTruncateExpression,
};

inline constexpr int kNumMutationKinds = 10;

std::string_view MutationKindName(MutationKind kind);
MutationKind ParseMutationKind(std::string_view name);  // InvalidArgument
MutationKind MutationKindAt(int index);                 // 0..9

struct Program {
  std::string id;
  std::string source;
  std::optional<MutationKind> mutation;  // set for injected test programs
};

enum class Provenance { kLoaded, kSynthetic };

struct Corpus {
  std::vector<Program> programs;
  Provenance provenance = Provenance::kLoaded;
};

struct RejectedProgram {
  Program program;
  ParseOutcome outcome;
};

struct LoadedCorpus {
  Corpus training;  // parses Ok
  std::vector<RejectedProgram> rejected;
};

// Reads every program from a directory (one file each, id = file name,
// sorted) or a JSON-lines file of {"id", "source"[, "mutation"]} records.
// Throws IoFailure on unreadable input, malformed records or duplicate ids,
// and EmptyInput when nothing was found.
std::vector<Program> ReadPrograms(const std::filesystem::path& path);

// ReadPrograms, then splits on parse_check.
LoadedCorpus LoadCorpus(const std::filesystem::path& path);

// Writes one file per program (named by id) into `dir`, creating it.
void WriteCorpusDir(const std::vector<Program>& programs,
                    const std::filesystem::path& dir);
void WriteJsonLines(const std::vector<Program>& programs,
                    const std::filesystem::path& file);

// Families: "recurPower-like", "iterPower-like", "oddTuples-like". Every
// program is checked against the parser before it is returned. Throws
// UnknownFamily, InvalidArgument for n < 1.
Corpus GenerateSynthetic(std::string_view family, int n, std::uint64_t seed);
std::vector<std::string> SyntheticFamilies();

struct InjectOptions {
  bool exclude_first_line = true;
  // Sites tried per kind before moving to the next kind.
  int max_sites_per_kind = 64;
  bool allow_other_kinds = true;
};

struct Mutant {
  std::string source;
  MutationKind kind;  // the kind actually applied
  int line = 0;       // line of the edited site in the original program
};

// Applies one token-level edit of `kind` at a seeded site so that the result
// fails parse_check. Falls back to other sites, then other kinds. Throws
// Unmutatable when no edit breaks the program, InvalidArgument when
// `program` does not parse.
Mutant InjectError(std::string_view program, MutationKind kind,
                   std::uint64_t seed, const InjectOptions& options = {});

// Seeded shuffle then cut: the first `train_size` programs train, the rest
// test. Ids never overlap.
struct Split {
  std::vector<Program> train;
  std::vector<Program> test;
};
Split SplitPrograms(std::vector<Program> programs, std::size_t train_size,
                    std::uint64_t seed);

}  // namespace synfix

#endif  // SYNFIX_CORPUS_H_
