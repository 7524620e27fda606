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

#include "synfix/vocab.h"

#include <algorithm>

#include "synfix/errors.h"

namespace synfix {
namespace {

// Kinds whose rare lexemes collapse to IDENT.
bool Relabelable(TokenKind kind) {
  return kind == TokenKind::kIdentRaw || kind == TokenKind::kNumber ||
         kind == TokenKind::kString;
}

}  // namespace

void Vocabulary::Index() {
  token_to_id_.clear();
  for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
    token_to_id_.emplace(id_to_token_[i], static_cast<TokenId>(i));
  }
}

Vocabulary Vocabulary::FromParts(std::vector<std::string> id_to_token,
                                 std::map<std::string, std::int64_t> counts,
                                 int threshold) {
  if (id_to_token.size() < 3 || id_to_token[0] != kIdentMarker ||
      id_to_token[1] != kNewlineLexeme || id_to_token[2] != kIndentLexeme) {
    throw InvalidArgument("vocabulary must start with IDENT, NEWLINE, INDENT");
  }
  if (threshold < 1) throw InvalidArgument("vocabulary threshold must be >= 1");
  Vocabulary v;
  v.id_to_token_ = std::move(id_to_token);
  v.counts_ = std::move(counts);
  v.threshold_ = threshold;
  v.Index();
  if (v.token_to_id_.size() != v.id_to_token_.size()) {
    throw InvalidArgument("vocabulary holds duplicate lexemes");
  }
  return v;
}

TokenId Vocabulary::IdOf(std::string_view lexeme) const {
  const auto it = token_to_id_.find(std::string(lexeme));
  return it == token_to_id_.end() ? ident_id() : it->second;
}

bool Vocabulary::Contains(std::string_view lexeme) const {
  return token_to_id_.count(std::string(lexeme)) > 0;
}

bool operator==(const Vocabulary& a, const Vocabulary& b) {
  return a.threshold() == b.threshold() && a.id_to_token() == b.id_to_token() &&
         a.counts() == b.counts();
}

Vocabulary BuildVocab(const std::vector<TokenSeq>& seqs,
                      const VocabConfig& config) {
  if (config.threshold < 1) {
    throw InvalidArgument("vocabulary threshold must be >= 1");
  }
  std::map<std::string, std::int64_t> counts;
  std::map<std::string, TokenKind> kinds;
  for (const TokenSeq& seq : seqs) {
    for (const Token& t : seq.tokens) {
      ++counts[t.lexeme];
      kinds.emplace(t.lexeme, t.kind);
    }
  }
  if (counts.empty()) throw EmptyCorpus("no tokens to build a vocabulary from");

  Vocabulary v;
  v.threshold_ = config.threshold;
  v.id_to_token_ = {std::string(kIdentMarker), std::string(kNewlineLexeme),
                    std::string(kIndentLexeme)};
  for (const auto& [lexeme, count] : counts) {
    if (lexeme == kIdentMarker || lexeme == kNewlineLexeme ||
        lexeme == kIndentLexeme) {
      continue;
    }
    if (Relabelable(kinds[lexeme]) && count < config.threshold) continue;
    v.id_to_token_.push_back(lexeme);
  }
  v.counts_ = std::move(counts);
  v.Index();
  return v;
}

TokenId EncodeId(const Token& token, const Vocabulary& vocab) {
  return vocab.IdOf(token.lexeme);
}

std::vector<double> Encode(const Token& token, const Vocabulary& vocab) {
  std::vector<double> one_hot(static_cast<std::size_t>(vocab.size()), 0.0);
  one_hot[static_cast<std::size_t>(EncodeId(token, vocab))] = 1.0;
  return one_hot;
}

std::vector<TokenId> EncodeSeq(const TokenSeq& seq, const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(seq.size());
  for (const Token& t : seq.tokens) ids.push_back(EncodeId(t, vocab));
  return ids;
}

const std::string& Decode(TokenId id, const Vocabulary& vocab) {
  if (id < 0 || id >= vocab.size()) {
    throw IdOutOfRange("token id " + std::to_string(id) + " outside [0, " +
                       std::to_string(vocab.size()) + ")");
  }
  return vocab.id_to_token()[static_cast<std::size_t>(id)];
}

}  // namespace synfix
