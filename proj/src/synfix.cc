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

#include "synfix/synfix.h"

#include <algorithm>

#include "synfix/errors.h"

namespace synfix {
namespace {

int CountNewlines(const std::vector<Token>& tokens) {
  return static_cast<int>(std::count_if(tokens.begin(), tokens.end(), [](const Token& t) {
    return t.kind == TokenKind::kNewline;
  }));
}

int CountNewlines(const TokenSeq& seq, std::size_t begin, std::size_t end) {
  int n = 0;
  for (std::size_t i = begin; i < end && i < seq.size(); ++i) {
    if (seq[i].kind == TokenKind::kNewline) ++n;
  }
  return n;
}

std::string_view StepCode(const RepairStep& s) {
  if (s.strategy == Strategy::kPrevLine) return "prev";
  const bool ins = s.strategy == Strategy::kInsert;
  if (s.endpoint == Endpoint::kOffset) return ins ? "ins@o" : "rep@o";
  return ins ? "ins@o-1" : "rep@o-1";
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// A rendered and re-checked candidate.
struct Attempt {
  std::vector<std::string> patch;
  std::string source;
  ParseOutcome outcome;
  int newline_delta = 0;
};

// State shared by all candidates of one repair run.
class Search {
 public:
  Search(const TokenSeq& seq, const ParseOutcome& original,
         const SequenceModel& model, const Vocabulary& vocab,
         const RepairConfig& config)
      : seq_(seq), original_(original), model_(model), vocab_(vocab),
        config_(config), ids_(EncodeSeq(seq, vocab)) {
    loc_ = TokenIndexAt(seq, original.line, original.col);
  }

  std::size_t loc() const { return loc_; }

  RepairResult Run() {
    for (const auto& pass : config_.order) {
      for (int i = 1; i <= config_.k; ++i) {
        for (const RepairStep& step : pass) {
          if (step.strategy == Strategy::kPrevLine) {
            if (i == 1 && TryPrevLine()) return Finish();
            continue;
          }
          if (TryTokenEdit(step, i)) return Finish();
        }
        if (std::all_of(pass.begin(), pass.end(), [](const RepairStep& s) {
              return s.strategy == Strategy::kPrevLine;
            })) {
          break;
        }
      }
    }
    return Finish();
  }

 private:
  // Greedy predictions from the given prefix end, cut before any IDENT.
  const std::vector<TokenId>& Predictions(Endpoint endpoint) {
    const int slot = endpoint == Endpoint::kOffset ? 0 : 1;
    if (!predicted_[slot]) {
      std::vector<TokenId> out;
      const std::size_t end = slot == 0 ? loc_ : loc_ - 1;
      if (slot == 0 ? loc_ > 0 : loc_ > 1) {
        out = PredictNext(model_, std::span<const TokenId>(ids_.data(), end), config_.k);
        const auto ident = std::find(out.begin(), out.end(), vocab_.ident_id());
        out.erase(ident, out.end());
      }
      predicted_[slot] = std::move(out);
    }
    return *predicted_[slot];
  }

  bool TryTokenEdit(const RepairStep& step, int length) {
    const std::vector<TokenId>& pred = Predictions(step.endpoint);
    if (static_cast<int>(pred.size()) < length) return false;
    const std::size_t at = step.endpoint == Endpoint::kOffset ? loc_ : loc_ - 1;
    std::vector<std::string> lexemes;
    for (int j = 0; j < length; ++j) lexemes.push_back(Decode(pred[j], vocab_));
    const int line = at < seq_.size() ? seq_[at].line
                                      : (seq_.empty() ? 1 : seq_.tokens.back().line);
    const std::vector<Token> patch = MakePatch(lexemes, line);
    int delta = CountNewlines(patch);
    TokenSeq edited;
    if (step.strategy == Strategy::kInsert) {
      edited = InsertAt(seq_, at, patch);
    } else {
      edited = ReplaceAt(seq_, at, patch);
      delta -= CountNewlines(seq_, at, at + patch.size());
    }
    return Evaluate(step, std::move(lexemes), edited, delta);
  }

  bool TryPrevLine() {
    const RepairStep step{Strategy::kPrevLine, Endpoint::kPrevLine};
    const int line = original_.line;
    std::vector<TokenId> prefix;
    std::size_t i = 0;
    for (; i < seq_.size() && seq_[i].line < line; ++i) prefix.push_back(ids_[i]);
    for (; i < seq_.size() && seq_[i].line == line &&
           seq_[i].kind == TokenKind::kIndentUnit;
         ++i) {
      prefix.push_back(ids_[i]);
    }
    if (prefix.empty()) return false;
    bool has_line = false;
    for (const Token& t : seq_.tokens) has_line = has_line || t.line == line;
    if (!has_line) return false;

    const LinePrediction pred = PredictUntilNewline(
        model_, prefix, vocab_.newline_id(), config_.max_line_len);
    if (!pred.complete) return false;
    std::vector<TokenId> body = pred.tokens;
    body.erase(body.begin(),
               std::find_if(body.begin(), body.end(),
                            [&](TokenId id) { return id != vocab_.indent_id(); }));
    const auto ident = std::find(body.begin(), body.end(), vocab_.ident_id());
    if (ident != body.end()) {
      body.erase(ident, body.end());
      if (body.empty()) return false;
      body.push_back(vocab_.newline_id());
    }
    if (body.empty()) return false;
    std::vector<std::string> lexemes;
    for (TokenId id : body) lexemes.push_back(Decode(id, vocab_));
    const TokenSeq edited = ReplaceLine(seq_, line, MakePatch(lexemes, line));
    return Evaluate(step, std::move(lexemes), edited, 0);
  }

  // Returns true when the candidate completely fixes the program.
  bool Evaluate(const RepairStep& step, std::vector<std::string> lexemes,
                const TokenSeq& edited, int newline_delta) {
    ++tried_;
    Attempt a{std::move(lexemes), Detokenize(edited), {}, newline_delta};
    a.outcome = ParseCheck(a.source);
    if (a.outcome.ok) {
      fixed_ = std::move(a);
      fixed_step_ = step;
      return true;
    }
    // The residual error must lie beyond the original line even after
    // accounting for lines the patch added.
    const int shifted = original_.line + std::max(0, newline_delta);
    if (a.outcome.line > shifted) {
      auto& slot = step.strategy == Strategy::kPrevLine ? other_prev_ : other_edit_;
      auto& slot_step =
          step.strategy == Strategy::kPrevLine ? other_prev_step_ : other_edit_step_;
      if (!slot) {
        slot = std::move(a);
        slot_step = step;
      }
    }
    return false;
  }

  RepairResult Finish() {
    RepairResult r;
    r.original_error = original_;
    r.location = loc_;
    r.candidates_tried = tried_;
    const std::optional<Attempt>* chosen = nullptr;
    RepairStep step{};
    if (fixed_) {
      r.status = RepairStatus::kCompletelyFixed;
      chosen = &fixed_;
      step = fixed_step_;
    } else if (other_edit_) {
      r.status = RepairStatus::kFixedOtherLine;
      chosen = &other_edit_;
      step = other_edit_step_;
    } else if (other_prev_) {
      r.status = RepairStatus::kFixedOtherLine;
      chosen = &other_prev_;
      step = other_prev_step_;
    }
    if (chosen) {
      const Attempt& a = **chosen;
      r.strategy = step.strategy;
      r.endpoint = step.endpoint;
      r.patch = a.patch;
      r.repaired_source = a.source;
      r.residual_error = a.outcome;
    }
    return r;
  }

  const TokenSeq& seq_;
  const ParseOutcome& original_;
  const SequenceModel& model_;
  const Vocabulary& vocab_;
  const RepairConfig& config_;
  std::vector<TokenId> ids_;
  std::size_t loc_ = 0;
  std::optional<std::vector<TokenId>> predicted_[2];
  int tried_ = 0;
  std::optional<Attempt> fixed_, other_edit_, other_prev_;
  RepairStep fixed_step_{}, other_edit_step_{}, other_prev_step_{};
};

}  // namespace

std::string_view RepairStatusName(RepairStatus status) {
  switch (status) {
    case RepairStatus::kCompletelyFixed: return "CompletelyFixed";
    case RepairStatus::kFixedOtherLine: return "FixedOtherLine";
    case RepairStatus::kNoFix: return "NoFix";
  }
  return "?";
}

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kInsert: return "Insert";
    case Strategy::kReplace: return "Replace";
    case Strategy::kPrevLine: return "PrevLine";
  }
  return "?";
}

std::string_view EndpointName(Endpoint endpoint) {
  switch (endpoint) {
    case Endpoint::kOffset: return "Offset";
    case Endpoint::kOffsetMinus1: return "Offset-1";
    case Endpoint::kPrevLine: return "PrevLine";
  }
  return "?";
}

StrategyOrder InterleavedOrder() {
  return {{kAllSteps[0], kAllSteps[1], kAllSteps[2], kAllSteps[3]}, {kAllSteps[4]}};
}

StrategyOrder OffsetOnlyOrder() {
  return {{kAllSteps[0], kAllSteps[1]}, {kAllSteps[4]}};
}

StrategyOrder OffsetFirstOrder() {
  return {{kAllSteps[0], kAllSteps[1]}, {kAllSteps[2], kAllSteps[3]}, {kAllSteps[4]}};
}

StrategyOrder ParseStrategyOrder(std::string_view text) {
  if (text == "interleaved") return InterleavedOrder();
  if (text == "offset-only") return OffsetOnlyOrder();
  if (text == "offset-first") return OffsetFirstOrder();
  StrategyOrder order;
  for (std::string_view pass_text : Split(text, ';')) {
    std::vector<RepairStep> pass;
    for (std::string_view code : Split(pass_text, ',')) {
      code = Trim(code);
      const auto it = std::find_if(kAllSteps.begin(), kAllSteps.end(),
                                   [&](const RepairStep& s) { return StepCode(s) == code; });
      if (it == kAllSteps.end()) {
        throw InvalidArgument("unknown repair step '" + std::string(code) + "'");
      }
      pass.push_back(*it);
    }
    order.push_back(std::move(pass));
  }
  return order;
}

std::string FormatStrategyOrder(const StrategyOrder& order) {
  std::string out;
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (p > 0) out += ';';
    for (std::size_t s = 0; s < order[p].size(); ++s) {
      if (s > 0) out += ',';
      out += StepCode(order[p][s]);
    }
  }
  return out;
}

void RepairConfig::Validate() const {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (max_line_len < 1) throw InvalidArgument("max_line_len must be >= 1");
  for (const auto& pass : order) {
    if (pass.empty()) throw InvalidArgument("strategy order has an empty pass");
  }
}

TokenSeq InsertAt(const TokenSeq& seq, std::size_t loc,
                  const std::vector<Token>& patch) {
  if (loc > seq.size()) throw IndexOutOfRange("insert position past the end");
  TokenSeq out;
  out.source_id = seq.source_id;
  out.tokens.reserve(seq.size() + patch.size());
  out.tokens.insert(out.tokens.end(), seq.tokens.begin(),
                    seq.tokens.begin() + static_cast<std::ptrdiff_t>(loc));
  out.tokens.insert(out.tokens.end(), patch.begin(), patch.end());
  out.tokens.insert(out.tokens.end(),
                    seq.tokens.begin() + static_cast<std::ptrdiff_t>(loc),
                    seq.tokens.end());
  return out;
}

TokenSeq ReplaceAt(const TokenSeq& seq, std::size_t loc,
                   const std::vector<Token>& patch) {
  if (loc > seq.size()) throw IndexOutOfRange("replace position past the end");
  TokenSeq out = seq;
  for (std::size_t j = 0; j < patch.size(); ++j) {
    if (loc + j < out.size()) {
      out.tokens[loc + j] = patch[j];
    } else {
      out.tokens.push_back(patch[j]);
    }
  }
  return out;
}

TokenSeq ReplaceLine(const TokenSeq& seq, int line,
                     const std::vector<Token>& patch) {
  std::size_t begin = 0;
  while (begin < seq.size() && seq[begin].line < line) ++begin;
  if (begin == seq.size() || seq[begin].line != line) {
    throw LineOutOfRange("line " + std::to_string(line) + " not in program");
  }
  while (begin < seq.size() && seq[begin].line == line &&
         seq[begin].kind == TokenKind::kIndentUnit) {
    ++begin;
  }
  std::size_t end = begin;
  while (end < seq.size() && seq[end].line == line) ++end;
  TokenSeq out;
  out.source_id = seq.source_id;
  out.tokens.assign(seq.tokens.begin(), seq.tokens.begin() + static_cast<std::ptrdiff_t>(begin));
  out.tokens.insert(out.tokens.end(), patch.begin(), patch.end());
  out.tokens.insert(out.tokens.end(), seq.tokens.begin() + static_cast<std::ptrdiff_t>(end),
                    seq.tokens.end());
  return out;
}

std::vector<Token> MakePatch(const std::vector<std::string>& lexemes, int line) {
  std::vector<Token> out;
  out.reserve(lexemes.size());
  for (const std::string& lex : lexemes) {
    out.push_back(Token{ClassifyLexeme(lex), lex, line, 0});
  }
  return out;
}

RepairStatus ClassifyOutcome(const ParseOutcome& original,
                             const ParseOutcome& after) {
  if (after.ok) return RepairStatus::kCompletelyFixed;
  if (after.line > original.line) return RepairStatus::kFixedOtherLine;
  return RepairStatus::kNoFix;
}

RepairResult Synfix(std::string_view source, const SequenceModel& model,
                    const Vocabulary& vocab, const RepairConfig& config) {
  config.Validate();
  if (model.config().vocab_size != vocab.size()) {
    throw DimensionMismatch("model and vocabulary sizes differ");
  }
  const ParseOutcome original = ParseCheck(source);
  if (original.ok) throw CalledOnValidProgram("program already parses");
  TokenSeq seq;
  try {
    seq = Tokenize(source);
  } catch (const UnsupportedCharacter&) {
    RepairResult r;
    r.original_error = original;
    return r;
  }
  Search search(seq, original, model, vocab, config);
  return search.Run();
}

std::array<RepairResult, 5> SynfixAllMethods(std::string_view source,
                                             const SequenceModel& model,
                                             const Vocabulary& vocab,
                                             const RepairConfig& config) {
  std::array<RepairResult, 5> out;
  RepairConfig single = config;
  for (std::size_t c = 0; c < kAllSteps.size(); ++c) {
    single.order = {{kAllSteps[c]}};
    out[c] = Synfix(source, model, vocab, single);
  }
  return out;
}

}  // namespace synfix
