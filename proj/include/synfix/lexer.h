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

#ifndef SYNFIX_LEXER_H_
#define SYNFIX_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace synfix {

enum class TokenKind {
  kKeyword,
  kIdentRaw,
  kNumber,
  kString,
  kOperator,
  kDelimiter,
  kNewline,
  kIndentUnit,
};

std::string_view TokenKindName(TokenKind kind);

// Canonical lexemes of the two structural token kinds.
inline constexpr std::string_view kNewlineLexeme = "\n";
inline constexpr std::string_view kIndentLexeme = "\t";

struct Token {
  TokenKind kind;
  std::string lexeme;
  int line = 1;  // 1-based
  int col = 1;   // 1-based byte column

  bool SameAs(const Token& other) const {
    return kind == other.kind && lexeme == other.lexeme;
  }
};

struct TokenSeq {
  std::vector<Token> tokens;
  std::string source_id;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
};

// True when both sequences agree on kinds and lexemes; positions are ignored.
bool SameTokens(const TokenSeq& a, const TokenSeq& b);

bool IsKeyword(std::string_view word);

// Infers the kind a standalone lexeme lexes to. Used when materializing
// predicted vocabulary entries back into tokens.
TokenKind ClassifyLexeme(std::string_view lexeme);

// Converts program text into a flat token sequence. Leading whitespace becomes
// INDENT_UNIT tokens (one per tab, one per four spaces, a ragged remainder of
// spaces rounds up); every physical line ends in exactly one NEWLINE token.
// Comments are dropped. Throws UnsupportedCharacter for bytes outside the
// supported alphabet.
TokenSeq Tokenize(std::string_view source, std::string source_id = "");

// Renders tokens back to text. INDENT_UNIT renders as a tab; adjacent tokens
// are separated by one space only where gluing them would re-lex differently.
std::string Detokenize(const TokenSeq& seq);
std::string Detokenize(const std::vector<Token>& tokens);

// Index of the first token at or after (line, col); seq.size() when past end.
std::size_t TokenIndexAt(const TokenSeq& seq, int line, int col);

// Renders a lexeme for human-facing output, escaping the structural markers.
std::string DisplayLexeme(std::string_view lexeme);

}  // namespace synfix

#endif  // SYNFIX_LEXER_H_
