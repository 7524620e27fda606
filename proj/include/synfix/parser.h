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

#ifndef SYNFIX_PARSER_H_
#define SYNFIX_PARSER_H_

#include <optional>
#include <string>
#include <string_view>

#include "synfix/lexer.h"

namespace synfix {

enum class ErrorKind { kSyntaxError, kIndentationError };

std::string_view ErrorKindName(ErrorKind kind);

// Result of checking a program against the target grammar. When `ok` is
// false, `kind`, `line` and `col` locate the first failure; `message` is a
// short human-readable description and takes no part in comparisons.
struct ParseOutcome {
  bool ok = true;
  ErrorKind kind = ErrorKind::kSyntaxError;
  int line = 0;
  int col = 0;
  std::string message;

  static ParseOutcome Ok() { return {}; }
  static ParseOutcome Error(ErrorKind kind, int line, int col,
                           std::string message = "") {
    return ParseOutcome{false, kind, line, col, std::move(message)};
  }

  friend bool operator==(const ParseOutcome& a, const ParseOutcome& b) {
    if (a.ok != b.ok) return false;
    return a.ok || (a.kind == b.kind && a.line == b.line && a.col == b.col);
  }
};

// Decides whether `source` belongs to the supported Python subset and, if
// not, reports the earliest error. Block-structure violations are
// IndentationError; everything else is SyntaxError. Never throws.
//
// Grammar (one logical line per physical line, blocks by indent units):
//   stmt      := compound | simple (';' simple)* [';']
//   compound  := 'def' NAME '(' [NAME (',' NAME)* [',']] ')' ':' suite
//              | 'if' test ':' suite ('elif' test ':' suite)* ['else' ':' suite]
//              | 'while' test ':' suite
//              | 'for' targets 'in' testlist ':' suite
//   suite     := simple-list on the same line | NEWLINE block one unit deeper
//   simple    := 'pass' | 'break' | 'continue' | 'return' [testlist]
//              | testlist (('=' testlist)+ | augop testlist)?
//   test      := or_test; usual Python precedence down to
//   atom      := NAME | NUMBER | STRING+ | True | False | None
//              | '(' [testlist] ')' | '[' [testlist] ']'
//   trailers  := call '(...)' | subscript '[...]' (slices allowed) | '.' NAME
ParseOutcome ParseCheck(std::string_view source);

// Same check on an already tokenized program. Token positions must be the
// ones the lexer assigned.
ParseOutcome ParseTokens(const TokenSeq& seq);

std::optional<int> FirstErrorLine(std::string_view source);

}  // namespace synfix

#endif  // SYNFIX_PARSER_H_
