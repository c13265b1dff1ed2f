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

#ifndef TAT_SCORED_VOCAB_H_
#define TAT_SCORED_VOCAB_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tat/corpus.h"

namespace tat {

struct ScoredPiece {
  std::string token;
  double score = 0.0;  // natural-log probability

  bool operator==(const ScoredPiece&) const = default;
};

// Token -> log-probability table produced by unigram training.
struct ScoredVocab {
  std::vector<ScoredPiece> entries;
  std::string marker{kDefaultMarker};

  size_t size() const { return entries.size(); }
  // Single-character tokens.
  std::set<std::string> char_set() const;
  double min_score() const;

  bool operator==(const ScoredVocab&) const = default;
};

// Descending score, ties by token bytes.
void sort_by_score(ScoredVocab* vocab);

// TSV interchange format:
//   # version: 1
//   # marker: ▁
//   # charset_size: K
//   token<TAB>score
// Header lines start with "# "; tokens never contain a space, so no token
// line can be mistaken for a header.
std::string vocab_to_tsv(const ScoredVocab& vocab);
ScoredVocab vocab_from_tsv(std::string_view content);

void write_vocab(const ScoredVocab& vocab, const std::string& path);
ScoredVocab read_vocab(const std::string& path);

}  // namespace tat

#endif  // TAT_SCORED_VOCAB_H_
