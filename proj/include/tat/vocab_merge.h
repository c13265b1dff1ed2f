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

#ifndef TAT_VOCAB_MERGE_H_
#define TAT_VOCAB_MERGE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tat/scored_vocab.h"
#include "tat/tokenizer.h"

namespace tat {

// Boundary convention of a pre-trained vocabulary.
enum class Convention {
  kSentencePiece,  // "▁" prefixes word-initial pieces
  kByteLevel,      // GPT-2 byte alphabet, "Ġ" encodes a leading space
  kWordPiece,      // "##" prefixes word-internal pieces
};

Convention parse_convention(std::string_view name);  // sentencepiece|byte_level|wordpiece
std::string_view convention_name(Convention c);

enum class OriginalFormat { kList, kTsv, kJson };
OriginalFormat parse_original_format(std::string_view name);  // list|tsv|json

struct OriginalEntry {
  std::string token;
  bool special = false;
  std::optional<double> score;
};

// Pre-trained vocabulary; entry i has id i.
struct OriginalVocab {
  std::vector<OriginalEntry> entries;
  bool has_scores = false;
  Convention convention = Convention::kSentencePiece;
};

struct ImportOptions {
  OriginalFormat format = OriginalFormat::kList;
  std::optional<Convention> convention;  // detected when unset
  std::vector<std::string> special_tokens;
  bool detect_specials = true;  // <...> and [...] tokens
};

OriginalVocab parse_original(std::string_view content, const ImportOptions& opts);
OriginalVocab import_original(const std::string& path, const ImportOptions& opts);

bool looks_special(std::string_view token);
// byte_level if some token starts with "Ġ", wordpiece if some token starts
// with "##", sentencepiece otherwise.
Convention detect_convention(const std::vector<OriginalEntry>& entries);

// Original surface form -> this toolkit's marker convention. Byte-level
// tokens that do not decode to valid UTF-8 are returned verbatim.
std::string to_internal(std::string_view token, Convention convention, std::string_view marker);
// Internal token -> text handed to the original tokenizer: the byte-level
// or "▁" surface, or for WordPiece the space-separated words with a leading
// "##" when the token starts inside a word.
std::string to_original_surface(std::string_view token, Convention convention,
                                std::string_view marker);

enum class Origin { kOriginal, kTask, kOverlap };
std::string_view origin_name(Origin o);
Origin parse_origin(std::string_view name);

struct MergedEntry {
  int32_t id = 0;
  std::string token;
  double score = 0.0;
  Origin origin = Origin::kOriginal;
  bool never_sample = false;
  std::string raw;  // original surface form; empty for task tokens

  bool operator==(const MergedEntry&) const = default;
};

struct MergedVocab {
  std::vector<MergedEntry> entries;  // entries[i].id == i
  size_t original_size = 0;
  double big_score = 0.0;
  std::string marker{kDefaultMarker};
  Convention convention = Convention::kSentencePiece;

  size_t size() const { return entries.size(); }
  bool operator==(const MergedVocab&) const = default;
};

// Score stored for special tokens; they never enter a lattice.
inline constexpr double kSpecialTokenScore = 0.0;

struct MergeConfig {
  std::optional<double> big_score;  // default_big_score() when unset
  bool keep_original_scores = false;
};

// -big_score * (len + 1) / len with len in characters. Throws kZeroLength.
double assign_score(std::string_view token, double big_score);

// |min task score|, which puts every assigned score strictly below every
// task score whenever it is positive.
double default_big_score(const ScoredVocab& task);

// Original ids are preserved and their tokens translated to the internal
// marker convention; special tokens become never_sample; overlapping tokens
// keep their original id with the task score; score-less original tokens
// get assign_score(); task-only tokens are appended in task-score order.
// Throws kDuplicateToken for repeated original tokens and kConfig when the
// big score would let an assigned score reach the lowest task score.
MergedVocab merge(const OriginalVocab& orig, const ScoredVocab& task, const MergeConfig& cfg,
                  std::vector<std::string>* log = nullptr);

// Merges one more task vocabulary into an existing merged vocabulary.
// extend(merge(o, t, c), t, c) == merge(o, t, c).
MergedVocab extend(const MergedVocab& merged, const ScoredVocab& task, const MergeConfig& cfg,
                   std::vector<std::string>* log = nullptr);

Tokenizer make_tokenizer(const MergedVocab& merged);

std::string merged_to_json(const MergedVocab& merged);
MergedVocab merged_from_json(std::string_view content);
void write_merged(const MergedVocab& merged, const std::string& path);
MergedVocab read_merged(const std::string& path);

}  // namespace tat

#endif  // TAT_VOCAB_MERGE_H_
