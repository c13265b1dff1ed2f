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

#ifndef TAT_EMBED_MAPPER_H_
#define TAT_EMBED_MAPPER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tat/vocab_merge.h"

namespace tat {

// Row-major float32 matrix; row i belongs to token id i.
struct EmbeddingMatrix {
  uint32_t rows = 0;
  uint32_t dim = 0;
  std::vector<float> data;

  std::span<const float> row(size_t i) const {
    return std::span<const float>(data).subspan(i * dim, dim);
  }
  bool operator==(const EmbeddingMatrix&) const = default;
};

// Throws kDimensionMismatch when rows * dim != data.size() and kFormat for
// non-finite values.
void check_matrix(const EmbeddingMatrix& m);

// Binary layout: "TATE", u32 LE rows, u32 LE dim, rows*dim LE float32.
std::string matrix_to_binary(const EmbeddingMatrix& m);
EmbeddingMatrix matrix_from_binary(std::string_view bytes);
// One row per line, space-separated shortest round-trip decimals.
std::string matrix_to_text(const EmbeddingMatrix& m);
EmbeddingMatrix matrix_from_text(std::string_view content);

enum class MatrixFormat { kBinary, kText };
MatrixFormat parse_matrix_format(std::string_view name);  // binary|text
void write_matrix(const EmbeddingMatrix& m, const std::string& path, MatrixFormat format);
EmbeddingMatrix read_matrix(const std::string& path, MatrixFormat format);

struct MappingItem {
  int32_t new_id = 0;
  std::string token;
  std::vector<int32_t> source_ids;

  bool operator==(const MappingItem&) const = default;
};

struct MappingPlan {
  std::vector<MappingItem> items;  // ascending new_id

  bool operator==(const MappingPlan&) const = default;
};

// Segments a surface string (see to_original_surface) into original ids.
using OriginalSegmenter = std::function<std::vector<int32_t>(std::string_view surface)>;

// Longest-match greedy over the original vocabulary in its own convention;
// word by word with "##" continuations for WordPiece. Returns an empty list
// when some position cannot be matched.
OriginalSegmenter greedy_segmenter(const MergedVocab& merged);

// One item per task-only token. Throws kSegmentationFailure when the
// segmenter yields nothing for a token and kUnknownTokenId for source ids
// outside the original range.
MappingPlan plan_mapping(const MergedVocab& merged, const OriginalSegmenter& segmenter);

// Copies the original rows bit-exact and sets every new row to the mean of
// its source rows (accumulated in double, rounded once). Throws
// kDimensionMismatch and kPlanGap.
EmbeddingMatrix extend_matrix(const EmbeddingMatrix& orig, const MappingPlan& plan,
                              size_t merged_size);

std::string plan_to_json(const MappingPlan& plan);
MappingPlan plan_from_json(std::string_view content);
void write_plan(const MappingPlan& plan, const std::string& path);
MappingPlan read_plan(const std::string& path);

}  // namespace tat

#endif  // TAT_EMBED_MAPPER_H_
