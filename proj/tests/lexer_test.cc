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

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "synfix/errors.h"

namespace synfix {
namespace {

std::vector<std::string> Lexemes(const TokenSeq& seq) {
  std::vector<std::string> out;
  for (const Token& t : seq.tokens) out.push_back(t.lexeme);
  return out;
}

const char kAssignInCondition[] =
    "def recurPower(base, exp):\n"
    "    if exp = 0:\n"
    "      return 1;\n"
    "    else:\n"
    "      return base*recurPower(base,exp-1)\n";

TEST(Tokenize, WorkedExamplePrefix) {
  const TokenSeq seq = Tokenize("def recurPower(base, exp):\n\tif exp");
  EXPECT_EQ(Lexemes(seq),
            (std::vector<std::string>{"def", "recurPower", "(", "base", ",",
                                      "exp", ")", ":", "\n", "\t", "if",
                                      "exp", "\n"}));
  EXPECT_EQ(seq[0].kind, TokenKind::kKeyword);
  EXPECT_EQ(seq[1].kind, TokenKind::kIdentRaw);
  EXPECT_EQ(seq[8].kind, TokenKind::kNewline);
  EXPECT_EQ(seq[9].kind, TokenKind::kIndentUnit);
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(Tokenize("").empty()); }

TEST(Tokenize, FourSpacesAreOneUnit) {
  const TokenSeq seq = Tokenize("x = 1\n    y = 2\n");
  EXPECT_EQ(Lexemes(seq), (std::vector<std::string>{"x", "=", "1", "\n", "\t",
                                                     "y", "=", "2", "\n"}));
}

TEST(Tokenize, IndentNormalization) {
  auto units = [](const std::string& lead) {
    const TokenSeq seq = Tokenize(lead + "x\n");
    int n = 0;
    for (const Token& t : seq.tokens) n += t.kind == TokenKind::kIndentUnit;
    return n;
  };
  EXPECT_EQ(units(""), 0);
  EXPECT_EQ(units("\t"), 1);
  EXPECT_EQ(units("\t\t"), 2);
  EXPECT_EQ(units("    "), 1);
  EXPECT_EQ(units(" "), 1);
  EXPECT_EQ(units("     "), 2);
  EXPECT_EQ(units("      "), 2);
  EXPECT_EQ(units("        "), 2);
  EXPECT_EQ(units("\t    "), 2);
  EXPECT_EQ(units("  \t"), 2);
}

TEST(Tokenize, LineEndingsCollapse) {
  const TokenSeq a = Tokenize("a\r\nb\rc\n");
  const TokenSeq b = Tokenize("a\nb\nc\n");
  EXPECT_TRUE(SameTokens(a, b));
  EXPECT_EQ(a.tokens.back().line, 3);
}

TEST(Tokenize, MissingFinalNewlineStillTerminates) {
  const TokenSeq seq = Tokenize("return x");
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_EQ(seq[2].kind, TokenKind::kNewline);
  EXPECT_EQ(seq[2].col, 9);
}

TEST(Tokenize, CommentsAndBlankLines) {
  const TokenSeq seq = Tokenize("x = 1  # set x\n\n   # only a comment\ny\n");
  EXPECT_EQ(Lexemes(seq), (std::vector<std::string>{"x", "=", "1", "\n", "\n",
                                                     "\n", "y", "\n"}));
}

TEST(Tokenize, OperatorsAndLiterals) {
  const TokenSeq seq = Tokenize("a **= b // 2.5e3 != 'it''s' \"q\\\"\" x[::2]");
  EXPECT_EQ(Lexemes(seq),
            (std::vector<std::string>{"a", "**=", "b", "//", "2.5e3", "!=",
                                      "'it'", "'s'", "\"q\\\"\"", "x", "[",
                                      ":", ":", "2", "]", "\n"}));
  EXPECT_EQ(seq[4].kind, TokenKind::kNumber);
  EXPECT_EQ(seq[6].kind, TokenKind::kString);
  EXPECT_EQ(seq[10].kind, TokenKind::kDelimiter);
}

TEST(Tokenize, UnterminatedStringRunsToEndOfLine) {
  const TokenSeq seq = Tokenize("s = 'abc + d\nx\n");
  EXPECT_EQ(Lexemes(seq), (std::vector<std::string>{"s", "=", "'abc + d", "\n",
                                                     "x", "\n"}));
}

TEST(Tokenize, StringsMayHoldUtf8) {
  const TokenSeq seq = Tokenize("s = 'h\xc3\xa9llo'\n");
  ASSERT_EQ(seq.size(), 4u);
  EXPECT_EQ(seq[2].lexeme, "'h\xc3\xa9llo'");
}

TEST(Tokenize, RejectsBytesOutsideAlphabet) {
  try {
    Tokenize("x = 1\ny = \x01\n");
    FAIL() << "expected UnsupportedCharacter";
  } catch (const UnsupportedCharacter& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.col(), 5);
  }
  EXPECT_THROW(Tokenize("x = \xc3\xa9\n"), UnsupportedCharacter);
  EXPECT_THROW(Tokenize("s = '\xff'\n"), UnsupportedCharacter);
}

TEST(Tokenize, PositionsStrictlyIncrease) {
  const TokenSeq seq = Tokenize(kAssignInCondition);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    EXPECT_LT(std::make_pair(seq[i - 1].line, seq[i - 1].col),
              std::make_pair(seq[i].line, seq[i].col));
  }
}

TEST(Detokenize, Examples) {
  EXPECT_EQ(Detokenize(Tokenize("return 1\n")), "return 1\n");
  EXPECT_EQ(Detokenize(TokenSeq{}), "");
  const TokenSeq sub = Tokenize("exp - 1");
  EXPECT_TRUE(SameTokens(Tokenize(Detokenize(sub)), sub));
  EXPECT_EQ(Detokenize(Tokenize("a = = b")), "a= =b\n");
  EXPECT_EQ(Detokenize(Tokenize("x = 1 .5")), "x=1 .5\n");
  EXPECT_EQ(Detokenize(Tokenize("\tif x:\n")), "\tif x:\n");
}

TEST(TokenIndexAt, AssignInConditionErrorLocation) {
  const TokenSeq seq = Tokenize(kAssignInCondition);
  const std::size_t idx = TokenIndexAt(seq, 2, 12);
  ASSERT_LT(idx, seq.size());
  EXPECT_EQ(seq[idx].lexeme, "=");
  EXPECT_EQ(seq[idx].line, 2);
}

TEST(TokenIndexAt, Boundaries) {
  const TokenSeq seq = Tokenize("a\nb\nc\n");
  EXPECT_EQ(TokenIndexAt(seq, 1, 1), 0u);
  EXPECT_EQ(TokenIndexAt(seq, 99, 1), seq.size());
  EXPECT_EQ(TokenIndexAt(seq, 2, 2), 3u);  // NEWLINE of line 2
}

TEST(ClassifyLexeme, Kinds) {
  EXPECT_EQ(ClassifyLexeme("return"), TokenKind::kKeyword);
  EXPECT_EQ(ClassifyLexeme("exp"), TokenKind::kIdentRaw);
  EXPECT_EQ(ClassifyLexeme("=="), TokenKind::kOperator);
  EXPECT_EQ(ClassifyLexeme(":"), TokenKind::kDelimiter);
  EXPECT_EQ(ClassifyLexeme("10"), TokenKind::kNumber);
  EXPECT_EQ(ClassifyLexeme("'a b'"), TokenKind::kString);
  EXPECT_EQ(ClassifyLexeme("\n"), TokenKind::kNewline);
  EXPECT_EQ(ClassifyLexeme("\t"), TokenKind::kIndentUnit);
}

// Random text over the supported alphabet: tokenize must succeed, NEWLINE
// count must equal the line count, and detokenize must round-trip.
TEST(TokenizeProperty, TotalityLineAccountingAndRoundtrip) {
  const std::string alphabet =
      "abcxyz_019 \t\t    ()[]{}:,;.+-*/%<>=!~&|^@$?`\\'\"#\n\r";
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const int len = static_cast<int>(rng() % 80);
    for (int i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    TokenSeq seq;
    ASSERT_NO_THROW(seq = Tokenize(text)) << text;

    int lines = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n' || (text[i] == '\r' && (i + 1 == text.size() ||
                                                  text[i + 1] != '\n'))) {
        ++lines;
      }
    }
    if (!text.empty() && text.back() != '\n' && text.back() != '\r') ++lines;
    int newlines = 0;
    for (const Token& t : seq.tokens) newlines += t.kind == TokenKind::kNewline;
    EXPECT_EQ(newlines, lines) << text;

    for (const Token& t : seq.tokens) EXPECT_FALSE(t.lexeme.empty());
    const TokenSeq again = Tokenize(Detokenize(seq));
    EXPECT_TRUE(SameTokens(seq, again)) << text;
  }
}

}  // namespace
}  // namespace synfix
