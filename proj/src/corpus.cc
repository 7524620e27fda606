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

#include "synfix/corpus.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "synfix/errors.h"
#include "synfix/lexer.h"

namespace synfix {
namespace {

namespace fs = std::filesystem;

constexpr std::array<std::string_view, kNumMutationKinds> kKindNames = {
    "DeleteToken",    "DuplicateToken",  "SwapAdjacentOperators",
    "EqEqToEq",       "DropCloseParen",  "DropColon",
    "MisspellKeyword", "DedentLine",     "IndentLine",
    "TruncateExpression",
};

// Seeded choices that do not depend on the standard library's distribution
// implementations, so corpora are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t Index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool Chance(int percent) { return static_cast<int>(engine_() % 100) < percent; }
  template <typename T>
  const T& Pick(const std::vector<T>& items) { return items[Index(items.size())]; }
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[Index(i)]);
  }
  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// ---- synthetic programs ----------------------------------------------------

// Builds a program line by line at a chosen indentation style.
class Writer {
 public:
  explicit Writer(std::string unit) : unit_(std::move(unit)) {}
  Writer& operator()(int depth, const std::string& text) {
    for (int i = 0; i < depth; ++i) out_ += unit_;
    out_ += text;
    out_ += '\n';
    return *this;
  }
  std::string str() const { return out_; }

 private:
  std::string unit_;
  std::string out_;
};

std::string Op(Rng& rng, const std::string& a, const char* op, const std::string& b) {
  return rng.Chance(75) ? a + " " + op + " " + b : a + op + b;
}

std::string Args(Rng& rng, const std::string& a, const std::string& b) {
  return rng.Chance(80) ? a + ", " + b : a + "," + b;
}

std::string RecurPower(Rng& rng, Writer w) {
  std::string b = "base", e = "exp";
  if (rng.Chance(12)) {
    static const std::vector<std::pair<std::string, std::string>> kRenames = {
        {"x", "n"}, {"num", "power"}, {"b", "e"}};
    std::tie(b, e) = rng.Pick(kRenames);
  }
  const std::string self = "recurPower";
  const std::string minus_one = Op(rng, e, "-", "1");
  const std::string call = self + "(" + Args(rng, b, minus_one) + ")";
  const std::string step = rng.Chance(75) ? Op(rng, b, "*", call) : Op(rng, call, "*", b);

  w(0, "def " + self + "(" + Args(rng, b, e) + "):");
  if (rng.Chance(10)) w(1, "# " + b + " to the power " + e);
  // Base case: exp == 0 -> 1 (half the time; the assignment fixes exp >= 0),
  // exp <= 0 -> 1, exp == 1 -> base.
  const std::size_t roll = rng.Index(4);
  const int pred = roll < 2 ? 0 : static_cast<int>(roll) - 1;
  const std::string cond = pred == 0 ? Op(rng, e, "==", "0")
                           : pred == 1 ? Op(rng, e, "<=", "0")
                                       : Op(rng, e, "==", "1");
  const std::string base_value = pred == 2 ? b : (rng.Chance(85) ? "1" : "1.0");
  const int shape = static_cast<int>(rng.Index(5));
  switch (shape) {
    case 0:  // if / else
      w(1, "if " + cond + ":")(2, "return " + base_value)(1, "else:")(2, "return " + step);
      break;
    case 1:  // early return
      w(1, "if " + cond + ":")(2, "return " + base_value)(1, "return " + step);
      break;
    case 2: {  // intermediate variable
      static const std::vector<std::string> kLocals = {"result", "ans", "res", "value"};
      const std::string v = rng.Pick(kLocals);
      w(1, "if " + cond + ":")(2, "return " + base_value)(1, v + " = " + step)(1, "return " + v);
      break;
    }
    case 3:  // two base cases
      w(1, "if " + Op(rng, e, "==", "0") + ":")(2, "return 1")
       (1, "elif " + Op(rng, e, "==", "1") + ":")(2, "return " + b)
       (1, "else:")(2, "return " + step);
      break;
    default: {  // halving when the exponent is even
      const std::string half = self + "(" + Args(rng, Op(rng, b, "*", b), Op(rng, e, "//", "2")) + ")";
      w(1, "if " + cond + ":")(2, "return " + base_value)
       (1, "elif " + Op(rng, Op(rng, e, "%", "2"), "==", "0") + ":")(2, "return " + half)
       (1, "else:")(2, "return " + step);
      break;
    }
  }
  return w.str();
}

std::string IterPower(Rng& rng, Writer w) {
  static const std::vector<std::string> kAcc = {"result", "ans", "res", "total", "product"};
  const std::string b = "base", e = "exp";
  const std::string acc = rng.Pick(kAcc);
  const std::string mult = rng.Chance(50) ? acc + " *= " + b : acc + " = " + Op(rng, acc, "*", b);
  w(0, "def iterPower(" + Args(rng, b, e) + "):");
  w(1, acc + " = 1");
  switch (rng.Index(3)) {
    case 0:
      w(1, "while " + Op(rng, e, ">", "0") + ":")(2, mult)
       (2, rng.Chance(60) ? e + " -= 1" : e + " = " + Op(rng, e, "-", "1"));
      break;
    case 1: {
      const std::string i = rng.Chance(70) ? "i" : "count";
      w(1, "for " + i + " in range(" + e + "):")(2, mult);
      break;
    }
    default: {
      const std::string i = "i";
      w(1, i + " = 0")(1, "while " + Op(rng, i, "<", e) + ":")(2, mult)(2, i + " += 1");
      break;
    }
  }
  w(1, "return " + acc);
  return w.str();
}

std::string OddTuples(Rng& rng, Writer w) {
  static const std::vector<std::string> kOut = {"rTup", "result", "oddTup", "ans"};
  const std::string t = "aTup";
  const std::string r = rng.Pick(kOut);
  w(0, "def oddTuples(" + t + "):");
  switch (rng.Index(4)) {
    case 0:
      w(1, r + " = ()")(1, "for i in range(" + Args(rng, "0", Args(rng, "len(" + t + ")", "2")) + "):")
       (2, rng.Chance(50) ? r + " += (" + t + "[i],)" : r + " = " + r + " + (" + t + "[i],)")
       (1, "return " + r);
      break;
    case 1:
      w(1, r + " = ()")(1, "index = 0")(1, "while index < len(" + t + "):")
       (2, "if " + Op(rng, "index % 2", "==", "0") + ":")(3, r + " = " + r + " + (" + t + "[index],)")
       (2, "index += 1")(1, "return " + r);
      break;
    case 2:
      w(1, "return " + t + "[::2]");
      break;
    default:
      w(1, r + " = ()")(1, "for i in range(len(" + t + ")):")
       (2, "if " + Op(rng, "i % 2", "==", "0") + ":")(3, r + " += (" + t + "[i],)")
       (1, "return " + r);
      break;
  }
  return w.str();
}

using Template = std::string (*)(Rng&, Writer);

Template FamilyTemplate(std::string_view family) {
  if (family == "recurPower-like") return RecurPower;
  if (family == "iterPower-like") return IterPower;
  if (family == "oddTuples-like") return OddTuples;
  throw UnknownFamily("unknown template family '" + std::string(family) + "'");
}

// ---- mutation --------------------------------------------------------------

bool IsContent(const Token& t) {
  return t.kind != TokenKind::kNewline && t.kind != TokenKind::kIndentUnit;
}

bool EndsOperand(const Token& t) {
  return t.kind == TokenKind::kIdentRaw || t.kind == TokenKind::kNumber ||
         t.kind == TokenKind::kString || t.lexeme == ")" || t.lexeme == "]" ||
         t.lexeme == "True" || t.lexeme == "False" || t.lexeme == "None";
}

bool IsBinaryOperator(const Token& t) {
  static const std::set<std::string> kOps = {"+", "-",  "*",  "/",  "//", "%", "**",
                                             "==", "!=", "<", "<=", ">",  ">="};
  return t.kind == TokenKind::kOperator && kOps.count(t.lexeme) > 0;
}

// Index one past the bracket group opened at `open`, or the line end.
std::size_t SkipGroup(const std::vector<Token>& toks, std::size_t open) {
  int depth = 0;
  std::size_t i = open;
  for (; i < toks.size() && toks[i].kind != TokenKind::kNewline; ++i) {
    const std::string& l = toks[i].lexeme;
    if (l == "(" || l == "[" || l == "{") ++depth;
    if (l == ")" || l == "]" || l == "}") {
      if (--depth == 0) return i + 1;
    }
  }
  return i;
}

// End of the operand starting at `i`: an atom with its trailers, or a
// bracketed group.
std::size_t OperandEnd(const std::vector<Token>& toks, std::size_t i) {
  if (i >= toks.size() || !IsContent(toks[i])) return i;
  const std::string& l = toks[i].lexeme;
  std::size_t end;
  if (l == "(" || l == "[") {
    end = SkipGroup(toks, i);
  } else if (l == "-" || l == "+" || l == "not") {
    return OperandEnd(toks, i + 1);
  } else if (toks[i].kind == TokenKind::kIdentRaw || toks[i].kind == TokenKind::kNumber ||
             toks[i].kind == TokenKind::kString || toks[i].kind == TokenKind::kKeyword) {
    end = i + 1;
  } else {
    return i;
  }
  while (end < toks.size() && (toks[end].lexeme == "(" || toks[end].lexeme == "[")) {
    end = SkipGroup(toks, end);
  }
  return end;
}

struct Site {
  std::size_t index;
  std::size_t extra = 0;  // kind-specific detail
};

std::vector<Site> Sites(MutationKind kind, const std::vector<Token>& toks,
                        int min_line) {
  std::vector<Site> sites;
  auto eligible = [&](std::size_t i) { return toks[i].line >= min_line; };
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!eligible(i)) continue;
    const Token& t = toks[i];
    const bool line_start = i == 0 || toks[i - 1].kind == TokenKind::kNewline;
    switch (kind) {
      case MutationKind::kDeleteToken:
      case MutationKind::kDuplicateToken:
        if (IsContent(t)) sites.push_back({i});
        break;
      case MutationKind::kSwapAdjacentOperators:
        if (i + 1 < toks.size() && IsContent(t) && IsContent(toks[i + 1]) &&
            t.lexeme != toks[i + 1].lexeme &&
            (t.kind == TokenKind::kOperator || t.kind == TokenKind::kDelimiter ||
             toks[i + 1].kind == TokenKind::kOperator ||
             toks[i + 1].kind == TokenKind::kDelimiter)) {
          sites.push_back({i});
        }
        break;
      case MutationKind::kEqEqToEq:
        if (t.lexeme == "==") sites.push_back({i});
        break;
      case MutationKind::kDropCloseParen:
        if (t.lexeme == ")") sites.push_back({i});
        break;
      case MutationKind::kDropColon:
        if (t.lexeme == ":") sites.push_back({i});
        break;
      case MutationKind::kMisspellKeyword:
        if (t.kind == TokenKind::kKeyword) {
          for (std::size_t j = 0; j + 1 < t.lexeme.size(); ++j) {
            std::string swapped = t.lexeme;
            std::swap(swapped[j], swapped[j + 1]);
            if (swapped != t.lexeme && !IsKeyword(swapped)) sites.push_back({i, j});
          }
        }
        break;
      case MutationKind::kDedentLine:
        if (line_start && t.kind == TokenKind::kIndentUnit) sites.push_back({i});
        break;
      case MutationKind::kIndentLine:
        if (line_start && t.kind != TokenKind::kNewline) sites.push_back({i});
        break;
      case MutationKind::kTruncateExpression:
        if (IsBinaryOperator(t) && i > 0 && EndsOperand(toks[i - 1])) {
          const std::size_t end = OperandEnd(toks, i + 1);
          if (end > i + 1) sites.push_back({i + 1, end});
        }
        break;
    }
  }
  return sites;
}

std::vector<Token> Apply(MutationKind kind, std::vector<Token> toks, const Site& s) {
  const auto at = toks.begin() + static_cast<std::ptrdiff_t>(s.index);
  switch (kind) {
    case MutationKind::kDeleteToken:
    case MutationKind::kDropCloseParen:
    case MutationKind::kDropColon:
    case MutationKind::kDedentLine:
      toks.erase(at);
      break;
    case MutationKind::kDuplicateToken:
      toks.insert(at, *at);
      break;
    case MutationKind::kSwapAdjacentOperators:
      std::iter_swap(at, at + 1);
      break;
    case MutationKind::kEqEqToEq:
      at->lexeme = "=";
      break;
    case MutationKind::kMisspellKeyword:
      std::swap(at->lexeme[s.extra], at->lexeme[s.extra + 1]);
      at->kind = TokenKind::kIdentRaw;
      break;
    case MutationKind::kIndentLine:
      toks.insert(at, Token{TokenKind::kIndentUnit, std::string(kIndentLexeme), at->line, 1});
      break;
    case MutationKind::kTruncateExpression:
      toks.erase(at, toks.begin() + static_cast<std::ptrdiff_t>(s.extra));
      break;
  }
  return toks;
}

// ---- I/O -------------------------------------------------------------------

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure("error reading '" + path.string() + "'");
  return ss.str();
}

std::vector<Program> ReadDirectory(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    const std::string name = it->path().filename().string();
    if (!name.empty() && name[0] != '.') files.push_back(it->path());
  }
  if (ec) throw IoFailure("cannot list '" + dir.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());
  std::vector<Program> out;
  for (const fs::path& f : files) out.push_back({f.filename().string(), ReadFile(f), {}});
  return out;
}

std::vector<Program> ReadJsonLines(const fs::path& file) {
  std::istringstream in(ReadFile(file));
  std::vector<Program> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      Program p{j.at("id").get<std::string>(), j.at("source").get<std::string>(), {}};
      if (j.contains("mutation") && !j.at("mutation").is_null()) {
        p.mutation = ParseMutationKind(j.at("mutation").get<std::string>());
      }
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      throw IoFailure(file.string() + ":" + std::to_string(number) +
                      ": bad record: " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string_view MutationKindName(MutationKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

MutationKind ParseMutationKind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<MutationKind>(i);
  }
  throw InvalidArgument("unknown mutation kind '" + std::string(name) + "'");
}

MutationKind MutationKindAt(int index) {
  if (index < 0 || index >= kNumMutationKinds) {
    throw InvalidArgument("mutation kind index out of range");
  }
  return static_cast<MutationKind>(index);
}

std::vector<Program> ReadPrograms(const fs::path& path) {
  std::error_code ec;
  const fs::file_status st = fs::status(path, ec);
  std::vector<Program> programs;
  if (fs::is_directory(st)) {
    programs = ReadDirectory(path);
  } else if (fs::is_regular_file(st)) {
    programs = ReadJsonLines(path);
  } else {
    throw IoFailure("no corpus at '" + path.string() + "'");
  }
  std::set<std::string> ids;
  for (const Program& p : programs) {
    if (!ids.insert(p.id).second) throw IoFailure("duplicate program id '" + p.id + "'");
  }
  if (programs.empty()) throw EmptyInput("no programs in '" + path.string() + "'");
  return programs;
}

LoadedCorpus LoadCorpus(const fs::path& path) {
  LoadedCorpus out;
  out.training.provenance = Provenance::kLoaded;
  for (Program& p : ReadPrograms(path)) {
    ParseOutcome outcome = ParseCheck(p.source);
    if (outcome.ok) {
      out.training.programs.push_back(std::move(p));
    } else {
      out.rejected.push_back({std::move(p), std::move(outcome)});
    }
  }
  return out;
}

void WriteCorpusDir(const std::vector<Program>& programs, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create '" + dir.string() + "': " + ec.message());
  for (const Program& p : programs) {
    if (p.id.empty() || p.id.find('/') != std::string::npos || p.id[0] == '.') {
      throw IoFailure("program id '" + p.id + "' is not a usable file name");
    }
    std::ofstream out(dir / p.id, std::ios::binary | std::ios::trunc);
    out << p.source;
    if (!out) throw IoFailure("cannot write '" + (dir / p.id).string() + "'");
  }
}

void WriteJsonLines(const std::vector<Program>& programs, const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write '" + file.string() + "'");
  for (const Program& p : programs) {
    nlohmann::json j = {{"id", p.id}, {"source", p.source}};
    if (p.mutation) j["mutation"] = std::string(MutationKindName(*p.mutation));
    out << j.dump() << '\n';
  }
  if (!out) throw IoFailure("failed writing '" + file.string() + "'");
}

std::vector<std::string> SyntheticFamilies() {
  return {"recurPower-like", "iterPower-like", "oddTuples-like"};
}

Corpus GenerateSynthetic(std::string_view family, int n, std::uint64_t seed) {
  const Template make = FamilyTemplate(family);
  if (n < 1) throw InvalidArgument("program count must be >= 1");
  Rng rng(seed);
  Corpus corpus;
  corpus.provenance = Provenance::kSynthetic;
  const int width = std::max<int>(4, static_cast<int>(std::to_string(n - 1).size()));
  for (int i = 0; i < n; ++i) {
    Writer w(rng.Chance(70) ? "    " : "\t");
    std::string source = make(rng, std::move(w));
    const ParseOutcome check = ParseCheck(source);
    if (!check.ok) {
      throw std::logic_error("generator produced an invalid program: " + check.message +
                             "\n" + source);
    }
    std::string index = std::to_string(i);
    index.insert(0, static_cast<std::size_t>(width) - std::min<std::size_t>(index.size(), width), '0');
    corpus.programs.push_back({std::string(family) + "_" + index + ".py", std::move(source), {}});
  }
  return corpus;
}

Mutant InjectError(std::string_view program, MutationKind kind,
                   std::uint64_t seed, const InjectOptions& options) {
  if (!ParseCheck(program).ok) throw InvalidArgument("cannot mutate an invalid program");
  const TokenSeq seq = Tokenize(program);
  Rng rng(seed);
  std::vector<MutationKind> kinds = {kind};
  if (options.allow_other_kinds) {
    std::vector<MutationKind> rest;
    for (int k = 0; k < kNumMutationKinds; ++k) {
      if (MutationKindAt(k) != kind) rest.push_back(MutationKindAt(k));
    }
    rng.Shuffle(rest);
    kinds.insert(kinds.end(), rest.begin(), rest.end());
  }
  const int min_line = options.exclude_first_line ? 2 : 1;
  for (MutationKind k : kinds) {
    std::vector<Site> sites = Sites(k, seq.tokens, min_line);
    rng.Shuffle(sites);
    const std::size_t limit =
        std::min(sites.size(), static_cast<std::size_t>(std::max(1, options.max_sites_per_kind)));
    for (std::size_t s = 0; s < limit; ++s) {
      const std::vector<Token> mutated = Apply(k, seq.tokens, sites[s]);
      std::string text = Detokenize(mutated);
      if (!ParseCheck(text).ok) {
        return {std::move(text), k, seq.tokens[sites[s].index].line};
      }
    }
  }
  throw Unmutatable("no " + std::string(MutationKindName(kind)) +
                    " edit breaks this program");
}

Split SplitPrograms(std::vector<Program> programs, std::size_t train_size,
                    std::uint64_t seed) {
  std::set<std::string> ids;
  for (const Program& p : programs) {
    if (!ids.insert(p.id).second) throw InvalidArgument("duplicate program id '" + p.id + "'");
  }
  if (train_size > programs.size()) throw InvalidArgument("train size exceeds corpus");
  Rng rng(seed);
  rng.Shuffle(programs);
  Split split;
  split.train.assign(std::make_move_iterator(programs.begin()),
                     std::make_move_iterator(programs.begin() + static_cast<std::ptrdiff_t>(train_size)));
  split.test.assign(std::make_move_iterator(programs.begin() + static_cast<std::ptrdiff_t>(train_size)),
                    std::make_move_iterator(programs.end()));
  return split;
}

}  // namespace synfix
