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

#ifndef SYNFIX_VOCAB_H_
#define SYNFIX_VOCAB_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synfix/lexer.h"

namespace synfix {

using TokenId = int;

inline constexpr std::string_view kIdentMarker = "IDENT";

struct VocabConfig {
  int threshold = 4;
};

// Bidirectional lexeme <-> id map. Identifier, number and string lexemes
// seen fewer than `threshold` times in the training corpus share the IDENT
// id; keywords, operators, delimiters and the structural tokens are always
// kept. Ids are dense: IDENT is 0, NEWLINE 1, INDENT_UNIT 2, then the retained
// lexemes in byte order.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Rebuilds a vocabulary from its serialized parts. Throws InvalidArgument
  // if the parts are inconsistent.
  static Vocabulary FromParts(std::vector<std::string> id_to_token,
                              std::map<std::string, std::int64_t> counts,
                              int threshold);

  int size() const { return static_cast<int>(id_to_token_.size()); }
  TokenId ident_id() const { return 0; }
  TokenId newline_id() const { return 1; }
  TokenId indent_id() const { return 2; }
  int threshold() const { return threshold_; }

  // Id of `lexeme`, or ident_id() when it was not retained.
  TokenId IdOf(std::string_view lexeme) const;
  bool Contains(std::string_view lexeme) const;

  const std::vector<std::string>& id_to_token() const { return id_to_token_; }
  const std::map<std::string, std::int64_t>& counts() const { return counts_; }

 private:
  friend Vocabulary BuildVocab(const std::vector<TokenSeq>& seqs,
                               const VocabConfig& config);
  void Index();

  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::map<std::string, std::int64_t> counts_;
  int threshold_ = 1;
};

bool operator==(const Vocabulary& a, const Vocabulary& b);

// Throws EmptyCorpus when `seqs` holds no tokens, InvalidArgument when the
// threshold is below 1.
Vocabulary BuildVocab(const std::vector<TokenSeq>& seqs,
                      const VocabConfig& config);

// One-hot vector of length vocab.size().
std::vector<double> Encode(const Token& token, const Vocabulary& vocab);
TokenId EncodeId(const Token& token, const Vocabulary& vocab);
std::vector<TokenId> EncodeSeq(const TokenSeq& seq, const Vocabulary& vocab);

// Lexeme for `id`; the IDENT id decodes to "IDENT". Throws IdOutOfRange.
const std::string& Decode(TokenId id, const Vocabulary& vocab);

}  // namespace synfix

#endif  // SYNFIX_VOCAB_H_
