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

#include "synfix/parser.h"

#include <cstddef>
#include <vector>

#include "synfix/errors.h"

namespace synfix {
namespace {

struct ParseFailure {
  ErrorKind kind;
  int line;
  int col;
  std::string message;
};

// One non-blank physical line: [begin, end) indexes its content tokens.
struct LogicalLine {
  int indent = 0;
  int number = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  int eol_col = 1;  // one past the last content character
};

// Expression categories that matter for assignment-target checks.
enum class ExprShape { kName, kSubscript, kAttribute, kTuple, kList, kOther };

bool Assignable(ExprShape shape) { return shape != ExprShape::kOther; }

class Parser {
 public:
  explicit Parser(const TokenSeq& seq) : toks_(seq.tokens) { SplitLines(); }

  void ParseProgram() {
    if (lines_.empty()) return;
    ParseBlock(0);
  }

 private:
  void SplitLines() {
    std::size_t i = 0;
    while (i < toks_.size()) {
      LogicalLine line;
      line.number = toks_[i].line;
      while (i < toks_.size() && toks_[i].kind == TokenKind::kIndentUnit) {
        ++line.indent;
        ++i;
      }
      line.begin = i;
      while (i < toks_.size() && toks_[i].kind != TokenKind::kNewline) ++i;
      line.end = i;
      if (i < toks_.size()) ++i;  // NEWLINE
      if (line.begin == line.end) continue;
      const Token& last = toks_[line.end - 1];
      line.eol_col = last.col + static_cast<int>(last.lexeme.size());
      lines_.push_back(line);
    }
  }

  [[noreturn]] void Fail(ErrorKind kind, int line, int col,
                         std::string message) const {
    throw ParseFailure{kind, line, col, std::move(message)};
  }

  // ---- line cursor ---------------------------------------------------------

  const LogicalLine& Cur() const { return lines_[line_idx_]; }
  bool AtEol() const { return pos_ >= Cur().end; }
  const Token* Peek() const { return AtEol() ? nullptr : &toks_[pos_]; }
  const Token* PeekAt(std::size_t ahead) const {
    return pos_ + ahead < Cur().end ? &toks_[pos_ + ahead] : nullptr;
  }
  bool Is(std::string_view lexeme) const {
    const Token* t = Peek();
    return t != nullptr && t->kind != TokenKind::kString &&
           t->lexeme == lexeme;
  }
  bool IsKind(TokenKind kind) const {
    const Token* t = Peek();
    return t != nullptr && t->kind == kind;
  }
  bool Accept(std::string_view lexeme) {
    if (!Is(lexeme)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void FailHere(std::string message) const {
    if (const Token* t = Peek()) {
      Fail(ErrorKind::kSyntaxError, t->line, t->col, std::move(message));
    }
    Fail(ErrorKind::kSyntaxError, Cur().number, Cur().eol_col,
         std::move(message));
  }
  void Expect(std::string_view lexeme) {
    if (!Accept(lexeme)) FailHere("expected '" + std::string(lexeme) + "'");
  }
  void ExpectName() {
    if (!IsKind(TokenKind::kIdentRaw)) FailHere("expected a name");
    ++pos_;
  }

  // ---- blocks --------------------------------------------------------------

  void ParseBlock(int level) {
    while (line_idx_ < lines_.size()) {
      const LogicalLine& line = Cur();
      if (line.indent < level) return;
      if (line.indent > level) {
        const Token& first = toks_[line.begin];
        Fail(ErrorKind::kIndentationError, first.line, first.col,
             "unexpected indent");
      }
      ParseStatement(level);
    }
  }

  // Parses the suite following a header's ':' and advances past it.
  void ParseSuite(int level) {
    if (!AtEol()) {
      ParseSimpleList();
      ++line_idx_;
      return;
    }
    const LogicalLine header = Cur();
    ++line_idx_;
    if (line_idx_ >= lines_.size()) {
      Fail(ErrorKind::kIndentationError, header.number, header.eol_col,
           "expected an indented block");
    }
    const LogicalLine& body = Cur();
    const Token& first = toks_[body.begin];
    if (body.indent <= level) {
      Fail(ErrorKind::kIndentationError, first.line, first.col,
           "expected an indented block");
    }
    if (body.indent > level + 1) {
      Fail(ErrorKind::kIndentationError, first.line, first.col,
           "unexpected indent");
    }
    ParseBlock(level + 1);
  }

  void BeginLine() { pos_ = Cur().begin; }

  // True if the next line continues an if-chain at `level` with `keyword`.
  bool NextLineStartsWith(int level, std::string_view keyword) const {
    if (line_idx_ >= lines_.size()) return false;
    const LogicalLine& line = lines_[line_idx_];
    return line.indent == level && toks_[line.begin].kind ==
                                       TokenKind::kKeyword &&
           toks_[line.begin].lexeme == keyword;
  }

  void ParseStatement(int level) {
    BeginLine();
    const Token& first = toks_[pos_];
    if (first.kind == TokenKind::kKeyword) {
      if (first.lexeme == "def") return ParseDef(level);
      if (first.lexeme == "if") return ParseIf(level);
      if (first.lexeme == "while") {
        ++pos_;
        ParseTest();
        Expect(":");
        return ParseSuite(level);
      }
      if (first.lexeme == "for") return ParseFor(level);
    }
    ParseSimpleList();
    ++line_idx_;
  }

  void ParseDef(int level) {
    ++pos_;
    ExpectName();
    Expect("(");
    if (!Is(")")) {
      ExpectName();
      while (Accept(",")) {
        if (Is(")")) break;
        ExpectName();
      }
    }
    Expect(")");
    Expect(":");
    ParseSuite(level);
  }

  void ParseIf(int level) {
    ++pos_;
    ParseTest();
    Expect(":");
    ParseSuite(level);
    while (NextLineStartsWith(level, "elif")) {
      BeginLine();
      ++pos_;
      ParseTest();
      Expect(":");
      ParseSuite(level);
    }
    if (NextLineStartsWith(level, "else")) {
      BeginLine();
      ++pos_;
      Expect(":");
      ParseSuite(level);
    }
  }

  void ParseFor(int level) {
    ++pos_;
    const Token* start = Peek();
    ExprShape shape = ParseTargetList();
    if (!Assignable(shape)) {
      Fail(ErrorKind::kSyntaxError, start->line, start->col,
           "cannot assign to expression");
    }
    Expect("in");
    ParseTestList();
    Expect(":");
    ParseSuite(level);
  }

  ExprShape ParseTargetList() {
    ExprShape shape = ParseArith();
    if (!Is(",")) return shape;
    bool assignable = Assignable(shape);
    while (Accept(",")) {
      if (!CanStartExpr()) break;
      assignable = Assignable(ParseArith()) && assignable;
    }
    return assignable ? ExprShape::kTuple : ExprShape::kOther;
  }

  // ---- simple statements ---------------------------------------------------

  void ParseSimpleList() {
    ParseSmall();
    while (Accept(";")) {
      if (AtEol()) break;
      ParseSmall();
    }
    if (!AtEol()) FailHere("invalid syntax");
  }

  void ParseSmall() {
    if (IsKind(TokenKind::kKeyword)) {
      const std::string& kw = Peek()->lexeme;
      if (kw == "pass" || kw == "break" || kw == "continue") {
        ++pos_;
        return;
      }
      if (kw == "return") {
        ++pos_;
        if (CanStartExpr()) ParseTestList();
        return;
      }
    }
    ExprShape shape = ParseTestList();
    if (IsKind(TokenKind::kOperator) && IsAugAssign(Peek()->lexeme)) {
      if (shape != ExprShape::kName && shape != ExprShape::kSubscript &&
          shape != ExprShape::kAttribute) {
        FailHere("illegal target for augmented assignment");
      }
      ++pos_;
      ParseTestList();
      return;
    }
    while (Is("=")) {
      if (!Assignable(shape)) FailHere("cannot assign to expression");
      ++pos_;
      shape = ParseTestList();
    }
  }

  static bool IsAugAssign(std::string_view op) {
    return op == "+=" || op == "-=" || op == "*=" || op == "/=" ||
           op == "%=" || op == "**=" || op == "//=";
  }

  // ---- expressions ---------------------------------------------------------

  bool CanStartExpr() const {
    const Token* t = Peek();
    if (t == nullptr) return false;
    switch (t->kind) {
      case TokenKind::kIdentRaw:
      case TokenKind::kNumber:
      case TokenKind::kString:
        return true;
      case TokenKind::kKeyword:
        return t->lexeme == "not" || t->lexeme == "True" ||
               t->lexeme == "False" || t->lexeme == "None";
      case TokenKind::kOperator:
        return t->lexeme == "-" || t->lexeme == "+";
      case TokenKind::kDelimiter:
        return t->lexeme == "(" || t->lexeme == "[";
      default:
        return false;
    }
  }

  ExprShape ParseTestList() {
    ExprShape shape = ParseTest();
    if (!Is(",")) return shape;
    bool assignable = Assignable(shape);
    while (Accept(",")) {
      if (!CanStartExpr()) break;
      assignable = Assignable(ParseTest()) && assignable;
    }
    return assignable ? ExprShape::kTuple : ExprShape::kOther;
  }

  ExprShape ParseTest() {
    ExprShape shape = ParseAnd();
    while (Accept("or")) {
      ParseAnd();
      shape = ExprShape::kOther;
    }
    return shape;
  }

  ExprShape ParseAnd() {
    ExprShape shape = ParseNot();
    while (Accept("and")) {
      ParseNot();
      shape = ExprShape::kOther;
    }
    return shape;
  }

  ExprShape ParseNot() {
    if (Accept("not")) {
      ParseNot();
      return ExprShape::kOther;
    }
    return ParseComparison();
  }

  bool IsCompareOp() const {
    return Is("==") || Is("!=") || Is("<") || Is("<=") || Is(">") ||
           Is(">=");
  }

  ExprShape ParseComparison() {
    ExprShape shape = ParseArith();
    while (IsCompareOp()) {
      ++pos_;
      ParseArith();
      shape = ExprShape::kOther;
    }
    return shape;
  }

  ExprShape ParseArith() {
    ExprShape shape = ParseTerm();
    while (Is("+") || Is("-")) {
      ++pos_;
      ParseTerm();
      shape = ExprShape::kOther;
    }
    return shape;
  }

  ExprShape ParseTerm() {
    ExprShape shape = ParseFactor();
    while (Is("*") || Is("/") || Is("%") || Is("//")) {
      ++pos_;
      ParseFactor();
      shape = ExprShape::kOther;
    }
    return shape;
  }

  ExprShape ParseFactor() {
    if (Is("-") || Is("+")) {
      ++pos_;
      ParseFactor();
      return ExprShape::kOther;
    }
    return ParsePower();
  }

  ExprShape ParsePower() {
    ExprShape shape = ParsePrimary();
    if (Accept("**")) {
      ParseFactor();
      shape = ExprShape::kOther;
    }
    return shape;
  }

  ExprShape ParsePrimary() {
    ExprShape shape = ParseAtom();
    for (;;) {
      if (Accept("(")) {
        if (!Is(")")) {
          ParseTest();
          while (Accept(",")) {
            if (Is(")")) break;
            ParseTest();
          }
        }
        Expect(")");
        shape = ExprShape::kOther;
      } else if (Accept("[")) {
        ParseSubscript();
        Expect("]");
        shape = ExprShape::kSubscript;
      } else if (Accept(".")) {
        ExpectName();
        shape = ExprShape::kAttribute;
      } else {
        return shape;
      }
    }
  }

  // index | [lower] ':' [upper] [':' [step]]
  void ParseSubscript() {
    if (!Is(":")) ParseTest();
    for (int colons = 0; colons < 2 && Accept(":"); ++colons) {
      if (CanStartExpr()) ParseTest();
    }
  }

  static bool StringTerminated(const std::string& s) {
    if (s.size() < 2 || s.back() != s.front()) return false;
    std::size_t backslashes = 0;
    for (std::size_t i = s.size() - 1; i > 1 && s[i - 1] == '\\'; --i) {
      ++backslashes;
    }
    return backslashes % 2 == 0;
  }

  ExprShape ParseAtom() {
    const Token* t = Peek();
    if (t == nullptr) FailHere("unexpected end of line");
    switch (t->kind) {
      case TokenKind::kIdentRaw:
        ++pos_;
        return ExprShape::kName;
      case TokenKind::kNumber:
        ++pos_;
        return ExprShape::kOther;
      case TokenKind::kString:
        while (IsKind(TokenKind::kString)) {
          if (!StringTerminated(Peek()->lexeme)) {
            FailHere("unterminated string literal");
          }
          ++pos_;
        }
        return ExprShape::kOther;
      case TokenKind::kKeyword:
        if (t->lexeme == "True" || t->lexeme == "False" ||
            t->lexeme == "None") {
          ++pos_;
          return ExprShape::kOther;
        }
        break;
      case TokenKind::kDelimiter:
        if (t->lexeme == "(") {
          ++pos_;
          if (Accept(")")) return ExprShape::kOther;
          ExprShape inner = ParseTestList();
          Expect(")");
          return inner;
        }
        if (t->lexeme == "[") {
          ++pos_;
          ExprShape inner = ExprShape::kList;
          if (!Is("]")) {
            inner = ParseTestList();
            inner = Assignable(inner) ? ExprShape::kList : ExprShape::kOther;
          }
          Expect("]");
          return inner;
        }
        break;
      default:
        break;
    }
    FailHere("invalid syntax");
  }

  const std::vector<Token>& toks_;
  std::vector<LogicalLine> lines_;
  std::size_t line_idx_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  return kind == ErrorKind::kSyntaxError ? "SyntaxError" : "IndentationError";
}

ParseOutcome ParseTokens(const TokenSeq& seq) {
  try {
    Parser parser(seq);
    parser.ParseProgram();
  } catch (const ParseFailure& failure) {
    return ParseOutcome::Error(failure.kind, failure.line, failure.col,
                               failure.message);
  }
  return ParseOutcome::Ok();
}

ParseOutcome ParseCheck(std::string_view source) {
  TokenSeq seq;
  try {
    seq = Tokenize(source);
  } catch (const UnsupportedCharacter& e) {
    return ParseOutcome::Error(ErrorKind::kSyntaxError, e.line(), e.col(),
                               "unsupported character");
  }
  return ParseTokens(seq);
}

std::optional<int> FirstErrorLine(std::string_view source) {
  const ParseOutcome outcome = ParseCheck(source);
  if (outcome.ok) return std::nullopt;
  return outcome.line;
}

}  // namespace synfix
