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

#ifndef TAT_METRICS_H_
#define TAT_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tat/corpus.h"
#include "tat/tokenizer.h"
#include "tat/vocab_merge.h"

namespace tat {

struct EfficiencyReport {
  size_t n_texts = 0;
  double n_tok = 0.0;          // mean tokens per text
  double len_units = 0.0;      // mean characters or words per text
  double len_per_tok = 0.0;    // len_units / n_tok
  double wall_centisec = 0.0;  // median of 5 timed passes, per encode call
  LengthUnit length_unit = LengthUnit::kCharacter;
  std::vector<size_t> tokens_per_text;
};

// Encodes every text and aggregates the means. Only encoding is timed.
// Throws kEmptyInput for an empty list and kCoverage for uncovered text.
EfficiencyReport efficiency(std::span<const std::string> texts, const Tokenizer& tokenizer,
                            const EncodeOptions& opts, LengthUnit unit, size_t timing_runs = 5);

struct ConstitutionReport {
  double overlap_frac = 0.0;
  double non_overlap_frac = 0.0;
  double original_frac = 0.0;
  size_t total_chars = 0;
};

// Character-length share of overlap, task-only and original tokens.
ConstitutionReport constitution(std::span<const std::vector<int32_t>> sequences,
                                const MergedVocab& merged);

struct LengthBucket {
  size_t lo = 0;  // exclusive
  size_t hi = 0;  // inclusive
};

struct BucketRow {
  LengthBucket bucket;
  std::vector<std::pair<std::string, double>> tokens;  // best score first
};

// (0,6] (6,12] (12,18] (18,24] (24,30] (30,32]
std::vector<LengthBucket> default_buckets();

// Top-k tokens by score in each length bucket, lengths in characters.
std::vector<BucketRow> length_bucket_table(std::span<const std::pair<std::string, double>> tokens,
                                           std::span<const LengthBucket> buckets, size_t k);

std::string efficiency_to_json(const EfficiencyReport& r);
std::string constitution_to_json(const ConstitutionReport& r);
std::string buckets_to_json(std::span<const BucketRow> rows);

}  // namespace tat

#endif  // TAT_METRICS_H_
