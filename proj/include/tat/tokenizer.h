// Copyright 2026 The TAT Authors
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

#ifndef TAT_TOKENIZER_H_
#define TAT_TOKENIZER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tat/corpus.h"
#include "tat/lattice.h"
#include "tat/scored_vocab.h"
#include "tat/trie.h"

namespace tat {

struct TokenInfo {
  std::string piece;
  double score = 0.0;
  bool never_sample = false;
};

enum class EncodeMode { kViterbi, kSample };

struct EncodeOptions {
  EncodeMode mode = EncodeMode::kViterbi;
  SamplerConfig sampler;
  uint64_t draw_index = 0;
  // When set, characters without a single-character token are emitted as
  // this id and the covered runs between them are segmented independently.
  std::optional<int32_t> unk_id;
};

// Immutable scored token table with a prefix index; token id == position.
// Tokens flagged never_sample are addressable by id but never enter a
// lattice. Safe to share across threads.
class Tokenizer {
 public:
  Tokenizer(std::vector<TokenInfo> tokens, std::string marker);

  static Tokenizer from_vocab(const ScoredVocab& vocab);

  size_t size() const { return tokens_.size(); }
  const TokenInfo& token(int32_t id) const;
  const std::string& marker() const { return marker_; }
  std::optional<int32_t> find(std::string_view piece) const;

  Lattice lattice(std::string_view normalized) const;

  Segmentation encode(std::string_view raw, const EncodeOptions& opts = {}) const;
  // Segmentation of an already normalized string.
  Segmentation encode_normalized(std::string_view normalized, const EncodeOptions& opts = {}) const;
  std::vector<Segmentation> nbest(std::string_view raw, size_t n) const;

  std::string decode(std::span<const int32_t> ids) const;

 private:
  std::vector<TokenInfo> tokens_;
  std::vector<double> scores_;
  std::string marker_;
  Trie trie_;     // sampleable tokens only
  Trie all_ids_;  // every token
};

}  // namespace tat

#endif  // TAT_TOKENIZER_H_
