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

#ifndef SYNFIX_SYNFIX_H_
#define SYNFIX_SYNFIX_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synfix/lexer.h"
#include "synfix/parser.h"
#include "synfix/seqmodel.h"
#include "synfix/vocab.h"

namespace synfix {

enum class RepairStatus { kCompletelyFixed, kFixedOtherLine, kNoFix };
enum class Strategy { kInsert, kReplace, kPrevLine };
enum class Endpoint { kOffset, kOffsetMinus1, kPrevLine };

std::string_view RepairStatusName(RepairStatus status);
std::string_view StrategyName(Strategy strategy);
std::string_view EndpointName(Endpoint endpoint);

// One repair attempt kind. PrevLine always pairs with Endpoint::kPrevLine.
struct RepairStep {
  Strategy strategy;
  Endpoint endpoint;
  friend bool operator==(const RepairStep&, const RepairStep&) = default;
};

// Steps are grouped into passes. Within a pass, candidate lengths i = 1..k
// are the outer loop and the pass's steps the inner loop; PrevLine ignores i
// and runs once where it appears.
using StrategyOrder = std::vector<std::vector<RepairStep>>;

// ins@o, rep@o, ins@o-1, rep@o-1 per length, then PrevLine.
StrategyOrder InterleavedOrder();
// ins@o, rep@o per length, then PrevLine. No Offset-1 candidates.
StrategyOrder OffsetOnlyOrder();
// All Offset candidates, then all Offset-1 candidates, then PrevLine.
StrategyOrder OffsetFirstOrder();

// Accepts a preset name ("interleaved", "offset-only", "offset-first") or an
// explicit list: steps "ins@o", "rep@o", "ins@o-1", "rep@o-1", "prev"
// separated by ',' within a pass and ';' between passes. InvalidArgument on
// anything else.
StrategyOrder ParseStrategyOrder(std::string_view text);
std::string FormatStrategyOrder(const StrategyOrder& order);

struct RepairConfig {
  int k = 10;
  int max_line_len = 40;
  StrategyOrder order = InterleavedOrder();

  void Validate() const;  // InvalidArgument
};

struct RepairResult {
  RepairStatus status = RepairStatus::kNoFix;
  std::optional<Strategy> strategy;
  std::optional<Endpoint> endpoint;
  std::vector<std::string> patch;  // lexemes as applied
  std::optional<std::string> repaired_source;
  ParseOutcome original_error;
  std::optional<ParseOutcome> residual_error;
  std::size_t location = 0;  // token index of the original error
  int candidates_tried = 0;
};

// Token-level edits. Patch tokens take the line of the edit point and column
// 0; callers re-render and re-lex for real positions.
TokenSeq InsertAt(const TokenSeq& seq, std::size_t loc,
                  const std::vector<Token>& patch);
// Overwrites [loc, loc + |patch|); a patch running past the end extends the
// sequence. Throws IndexOutOfRange when loc > |seq|.
TokenSeq ReplaceAt(const TokenSeq& seq, std::size_t loc,
                   const std::vector<Token>& patch);
// Replaces the tokens of `line` after its leading INDENT_UNIT run, including
// its NEWLINE, with `patch`. Throws LineOutOfRange.
TokenSeq ReplaceLine(const TokenSeq& seq, int line,
                     const std::vector<Token>& patch);

// Materializes lexemes as tokens (kind by ClassifyLexeme).
std::vector<Token> MakePatch(const std::vector<std::string>& lexemes, int line);

// Ok -> CompletelyFixed; error on a later line -> FixedOtherLine; else NoFix.
RepairStatus ClassifyOutcome(const ParseOutcome& original,
                             const ParseOutcome& after);

// Searches for a repair of the first error in `source`. Throws
// CalledOnValidProgram if `source` already parses.
RepairResult Synfix(std::string_view source, const SequenceModel& model,
                    const Vocabulary& vocab, const RepairConfig& config);

// The five single-method cells in the order ins@o, rep@o, ins@o-1, rep@o-1,
// prev; each is Synfix restricted to that one step.
inline constexpr std::array<RepairStep, 5> kAllSteps = {{
    {Strategy::kInsert, Endpoint::kOffset},
    {Strategy::kReplace, Endpoint::kOffset},
    {Strategy::kInsert, Endpoint::kOffsetMinus1},
    {Strategy::kReplace, Endpoint::kOffsetMinus1},
    {Strategy::kPrevLine, Endpoint::kPrevLine},
}};

std::array<RepairResult, 5> SynfixAllMethods(std::string_view source,
                                             const SequenceModel& model,
                                             const Vocabulary& vocab,
                                             const RepairConfig& config);

}  // namespace synfix

#endif  // SYNFIX_SYNFIX_H_
