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

#ifndef TAT_SEED_VOCAB_H_
#define TAT_SEED_VOCAB_H_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tat/corpus.h"

namespace tat {

inline constexpr size_t kDefaultMaxPieceLength = 24;

struct SeedPiece {
  std::string piece;
  uint64_t frequency = 0;

  bool operator==(const SeedPiece&) const = default;
};

// Candidate pieces for unigram training: the most frequent substrings of the
// corpus plus every single character.
struct SeedVocab {
  std::vector<SeedPiece> entries;  // selection order
  std::set<std::string> char_union;
  size_t target_seed_size = 0;
};

// Counts every substring of at most `max_piece_len` characters inside each
// sentence (markers count as characters, substrings never cross sentences),
// keeps the `seed_size` most frequent ones ranked by (frequency desc,
// length asc, bytes asc) and then appends any single character that did not
// make the cut. Throws kConfig when seed_size < |charset|.
SeedVocab extract_seed(const CorpusHandle& corpus, size_t max_piece_len, size_t seed_size);

// `piece<TAB>frequency` per line in selection order.
std::string seed_to_tsv(const SeedVocab& seed);

}  // namespace tat

#endif  // TAT_SEED_VOCAB_H_
