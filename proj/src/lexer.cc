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

#include "synfix/lexer.h"

#include <algorithm>
#include <array>
#include <optional>
#include <tuple>

#include "synfix/errors.h"

namespace synfix {
namespace {

constexpr std::array<std::string_view, 35> kKeywords = {
    "False", "None",   "True",     "and",    "as",       "assert", "async",
    "await", "break",  "class",    "continue", "def",    "del",    "elif",
    "else",  "except", "finally",  "for",    "from",     "global", "if",
    "import", "in",    "is",       "lambda", "nonlocal", "not",    "or",
    "pass",  "raise",  "return",   "try",    "while",    "with",   "yield"};

constexpr std::array<std::string_view, 2> kOps3 = {"**=", "//="};
constexpr std::array<std::string_view, 17> kOps2 = {
    "**", "//", "==", "!=", "<=", ">=", "+=", "-=", "*=",
    "/=", "%=", "->", "<<", ">>", "&=", "|=", "^="};
constexpr std::string_view kOps1 = "+-*/%<>=!~&|^@$?`\\";
constexpr std::string_view kDelims = "()[]{},:;.";

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsIdentChar(char c) { return IsIdentStart(c) || IsDigit(c); }
bool IsInlineSpace(char c) { return c == ' ' || c == '\t' || c == '\f'; }
bool IsPrintable(unsigned char c) { return c >= 0x20 && c <= 0x7e; }

// Length of a well-formed UTF-8 sequence starting at s[i], or 0.
std::size_t Utf8Length(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return 1;
  std::size_t n = 0;
  if ((b0 & 0xe0) == 0xc0 && b0 >= 0xc2) {
    n = 2;
  } else if ((b0 & 0xf0) == 0xe0) {
    n = 3;
  } else if ((b0 & 0xf8) == 0xf0 && b0 <= 0xf4) {
    n = 4;
  } else {
    return 0;
  }
  if (i + n > s.size()) return 0;
  for (std::size_t k = 1; k < n; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) return 0;
  }
  return n;
}

std::size_t ScanNumber(std::string_view s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && IsDigit(s[j])) ++j;
  if (j < s.size() && s[j] == '.') {
    ++j;
    while (j < s.size() && IsDigit(s[j])) ++j;
  }
  if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
    std::size_t k = j + 1;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
    if (k < s.size() && IsDigit(s[k])) {
      while (k < s.size() && IsDigit(s[k])) ++k;
      j = k;
    }
  }
  return j;
}

// Comments may hold any well-formed UTF-8 but nothing else.
void CheckComment(std::string_view text, std::size_t from, int line) {
  for (std::size_t k = from; k < text.size();) {
    const auto c = static_cast<unsigned char>(text[k]);
    if (c < 0x80 && !IsPrintable(c) && !IsInlineSpace(text[k])) {
      throw UnsupportedCharacter(line, static_cast<int>(k) + 1);
    }
    const std::size_t n = Utf8Length(text, k);
    if (n == 0) throw UnsupportedCharacter(line, static_cast<int>(k) + 1);
    k += n;
  }
}

// Scans the content of one physical line (no terminator) starting at `pos`,
// appending tokens positioned on `line`.
void ScanContent(std::string_view text, std::size_t pos, int line,
                 std::vector<Token>& out) {
  std::size_t i = pos;
  auto emit = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    out.push_back(Token{kind, std::string(text.substr(begin, end - begin)),
                        line, static_cast<int>(begin) + 1});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (IsInlineSpace(c)) {
      ++i;
      continue;
    }
    if (c == '#') {
      CheckComment(text, i, line);
      break;
    }
    if (IsIdentStart(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && IsIdentChar(text[j])) ++j;
      emit(IsKeyword(text.substr(i, j - i)) ? TokenKind::kKeyword
                                            : TokenKind::kIdentRaw,
           i, j);
      i = j;
      continue;
    }
    if (IsDigit(c) ||
        (c == '.' && i + 1 < text.size() && IsDigit(text[i + 1]))) {
      const std::size_t j = ScanNumber(text, i);
      emit(TokenKind::kNumber, i, j);
      i = j;
      continue;
    }
    if (c == '\'' || c == '"') {
      // Runs to the matching quote or, when unterminated, to end of line.
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != c) {
        if (text[j] == '\\' && j + 1 < text.size()) {
          j += 1;
        }
        const std::size_t n = Utf8Length(text, j);
        if (n == 0) throw UnsupportedCharacter(line, static_cast<int>(j) + 1);
        j += n;
      }
      if (j < text.size()) ++j;
      emit(TokenKind::kString, i, j);
      i = j;
      continue;
    }
    if (!IsPrintable(static_cast<unsigned char>(c))) {
      throw UnsupportedCharacter(line, static_cast<int>(i) + 1);
    }
    const std::string_view rest = text.substr(i);
    std::size_t len = 0;
    for (auto op : kOps3) {
      if (rest.starts_with(op)) len = 3;
    }
    if (len == 0) {
      for (auto op : kOps2) {
        if (rest.starts_with(op)) len = 2;
      }
    }
    if (len > 0) {
      emit(TokenKind::kOperator, i, i + len);
      i += len;
      continue;
    }
    if (kDelims.find(c) != std::string_view::npos) {
      emit(TokenKind::kDelimiter, i, i + 1);
    } else if (kOps1.find(c) != std::string_view::npos) {
      emit(TokenKind::kOperator, i, i + 1);
    } else {
      throw UnsupportedCharacter(line, static_cast<int>(i) + 1);
    }
    ++i;
  }
}

void TokenizeLine(std::string_view text, int line, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < text.size() && IsInlineSpace(text[i])) ++i;
  const bool blank = i == text.size() || text[i] == '#';
  if (!blank) {
    std::size_t j = 0;
    std::optional<std::size_t> run_start;
    int run = 0;
    auto flush_spaces = [&]() {
      for (int unit = 0; unit * 4 < run; ++unit) {
        out.push_back(Token{TokenKind::kIndentUnit, std::string(kIndentLexeme),
                            line, static_cast<int>(*run_start) + unit * 4 + 1});
      }
      run = 0;
      run_start.reset();
    };
    for (; j < i; ++j) {
      if (text[j] == ' ') {
        if (!run_start) run_start = j;
        ++run;
      } else if (text[j] == '\t') {
        if (run_start) flush_spaces();
        out.push_back(Token{TokenKind::kIndentUnit, std::string(kIndentLexeme),
                            line, static_cast<int>(j) + 1});
      }
      // Form feeds reset nothing and count for nothing.
    }
    if (run_start) flush_spaces();
    ScanContent(text, i, line, out);
  } else {
    CheckComment(text, i, line);
  }
  out.push_back(Token{TokenKind::kNewline, std::string(kNewlineLexeme), line,
                      static_cast<int>(text.size()) + 1});
}

std::vector<Token> ScanFragment(std::string_view text) {
  std::vector<Token> out;
  try {
    ScanContent(text, 0, 1, out);
  } catch (const UnsupportedCharacter&) {
    out.clear();
  }
  return out;
}

bool NeedsSpace(const Token& prev, const Token& next) {
  const std::string glued = prev.lexeme + next.lexeme;
  const std::vector<Token> relexed = ScanFragment(glued);
  return !(relexed.size() == 2 && relexed[0].SameAs(prev) &&
           relexed[1].SameAs(next));
}

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword:
      return "KEYWORD";
    case TokenKind::kIdentRaw:
      return "IDENT_RAW";
    case TokenKind::kNumber:
      return "NUMBER";
    case TokenKind::kString:
      return "STRING";
    case TokenKind::kOperator:
      return "OPERATOR";
    case TokenKind::kDelimiter:
      return "DELIMITER";
    case TokenKind::kNewline:
      return "NEWLINE";
    case TokenKind::kIndentUnit:
      return "INDENT_UNIT";
  }
  return "?";
}

bool SameTokens(const TokenSeq& a, const TokenSeq& b) {
  return std::equal(a.tokens.begin(), a.tokens.end(), b.tokens.begin(),
                    b.tokens.end(),
                    [](const Token& x, const Token& y) { return x.SameAs(y); });
}

bool IsKeyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

TokenKind ClassifyLexeme(std::string_view lexeme) {
  if (lexeme == kNewlineLexeme) return TokenKind::kNewline;
  if (lexeme == kIndentLexeme) return TokenKind::kIndentUnit;
  const std::vector<Token> toks = ScanFragment(lexeme);
  if (toks.size() == 1 && toks[0].lexeme == lexeme) return toks[0].kind;
  return TokenKind::kIdentRaw;
}

TokenSeq Tokenize(std::string_view source, std::string source_id) {
  TokenSeq seq;
  seq.source_id = std::move(source_id);
  int line = 1;
  std::size_t start = 0;
  while (start < source.size()) {
    std::size_t end = start;
    while (end < source.size() && source[end] != '\n' && source[end] != '\r') {
      ++end;
    }
    TokenizeLine(source.substr(start, end - start), line, seq.tokens);
    if (end < source.size()) {
      end += (source[end] == '\r' && end + 1 < source.size() &&
              source[end + 1] == '\n')
                 ? 2
                 : 1;
    }
    start = end;
    ++line;
  }
  return seq;
}

std::string Detokenize(const std::vector<Token>& tokens) {
  std::string out;
  const Token* prev = nullptr;  // previous content token on this line
  for (const Token& t : tokens) {
    switch (t.kind) {
      case TokenKind::kNewline:
        out += '\n';
        prev = nullptr;
        break;
      case TokenKind::kIndentUnit:
        out += '\t';
        prev = nullptr;
        break;
      default:
        if (prev != nullptr && NeedsSpace(*prev, t)) out += ' ';
        out += t.lexeme;
        prev = &t;
        break;
    }
  }
  return out;
}

std::string Detokenize(const TokenSeq& seq) { return Detokenize(seq.tokens); }

std::size_t TokenIndexAt(const TokenSeq& seq, int line, int col) {
  const auto it = std::lower_bound(
      seq.tokens.begin(), seq.tokens.end(), std::make_pair(line, col),
      [](const Token& t, const std::pair<int, int>& pos) {
        return std::tie(t.line, t.col) < std::tie(pos.first, pos.second);
      });
  return static_cast<std::size_t>(it - seq.tokens.begin());
}

std::string DisplayLexeme(std::string_view lexeme) {
  if (lexeme == kNewlineLexeme) return "\\n";
  if (lexeme == kIndentLexeme) return "\\t";
  return std::string(lexeme);
}

}  // namespace synfix
