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

#include "tat/metrics.h"

#include <algorithm>
#include <chrono>

#include "json.hpp"
#include "tat/error.h"
#include "tat/utf8.h"

namespace tat {

using json = nlohmann::json;

EfficiencyReport efficiency(std::span<const std::string> texts, const Tokenizer& tokenizer,
                            const EncodeOptions& opts, LengthUnit unit, size_t timing_runs) {
  if (texts.empty()) throw_error(ErrorCode::kEmptyInput, "efficiency needs at least one text");
  EfficiencyReport r;
  r.n_texts = texts.size();
  r.length_unit = unit;

  std::vector<std::string> normalized;
  normalized.reserve(texts.size());
  size_t total_tok = 0;
  size_t total_len = 0;
  for (const auto& t : texts) {
    normalized.push_back(normalize(t, tokenizer.marker()));
    total_len += count_length_units(t, unit);
    const size_t n = tokenizer.encode_normalized(normalized.back(), opts).token_ids.size();
    r.tokens_per_text.push_back(n);
    total_tok += n;
  }
  const double count = static_cast<double>(texts.size());
  r.n_tok = static_cast<double>(total_tok) / count;
  r.len_units = static_cast<double>(total_len) / count;
  r.len_per_tok = total_tok > 0 ? r.len_units / r.n_tok : 0.0;

  std::vector<double> seconds;
  for (size_t run = 0; run < std::max<size_t>(1, timing_runs); ++run) {
    size_t sink = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& s : normalized) sink += tokenizer.encode_normalized(s, opts).token_ids.size();
    const auto stop = std::chrono::steady_clock::now();
    volatile size_t keep = sink;
    (void)keep;
    seconds.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::sort(seconds.begin(), seconds.end());
  r.wall_centisec = seconds[seconds.size() / 2] * 100.0 / count;
  return r;
}

ConstitutionReport constitution(std::span<const std::vector<int32_t>> sequences,
                                const MergedVocab& merged) {
  size_t by_origin[3] = {0, 0, 0};
  for (const auto& seq : sequences) {
    for (int32_t id : seq) {
      if (id < 0 || static_cast<size_t>(id) >= merged.size()) {
        throw_error(ErrorCode::kUnknownTokenId, "unknown token id " + std::to_string(id));
      }
      const auto& e = merged.entries[static_cast<size_t>(id)];
      by_origin[static_cast<int>(e.origin)] += utf8::length(e.token);
    }
  }
  ConstitutionReport r;
  r.total_chars = by_origin[0] + by_origin[1] + by_origin[2];
  if (r.total_chars == 0) return r;
  const double total = static_cast<double>(r.total_chars);
  r.original_frac = static_cast<double>(by_origin[static_cast<int>(Origin::kOriginal)]) / total;
  r.non_overlap_frac = static_cast<double>(by_origin[static_cast<int>(Origin::kTask)]) / total;
  r.overlap_frac = static_cast<double>(by_origin[static_cast<int>(Origin::kOverlap)]) / total;
  return r;
}

std::vector<LengthBucket> default_buckets() {
  return {{0, 6}, {6, 12}, {12, 18}, {18, 24}, {24, 30}, {30, 32}};
}

std::vector<BucketRow> length_bucket_table(std::span<const std::pair<std::string, double>> tokens,
                                           std::span<const LengthBucket> buckets, size_t k) {
  std::vector<BucketRow> rows;
  for (const auto& b : buckets) {
    BucketRow row{b, {}};
    for (const auto& t : tokens) {
      const size_t len = utf8::length(t.first);
      if (len > b.lo && len <= b.hi) row.tokens.push_back(t);
    }
    std::stable_sort(row.tokens.begin(), row.tokens.end(), [](const auto& a, const auto& c) {
      if (a.second != c.second) return a.second > c.second;
      return a.first < c.first;
    });
    if (row.tokens.size() > k) row.tokens.resize(k);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string efficiency_to_json(const EfficiencyReport& r) {
  json doc = {{"n_texts", r.n_texts},
              {"n_tok", r.n_tok},
              {"len_units", r.len_units},
              {"len_per_tok", r.len_per_tok},
              {"wall_centisec", r.wall_centisec},
              {"length_unit", std::string(length_unit_name(r.length_unit))},
              {"timing_scope", "encode only"}};
  return doc.dump();
}

std::string constitution_to_json(const ConstitutionReport& r) {
  json doc = {{"overlap_frac", r.overlap_frac},
              {"non_overlap_frac", r.non_overlap_frac},
              {"original_frac", r.original_frac},
              {"total_chars", r.total_chars}};
  return doc.dump();
}

std::string buckets_to_json(std::span<const BucketRow> rows) {
  json doc = json::array();
  for (const auto& row : rows) {
    json tokens = json::array();
    for (const auto& [t, s] : row.tokens) tokens.push_back({{"token", t}, {"score", s}});
    doc.push_back({{"lo", row.bucket.lo}, {"hi", row.bucket.hi}, {"tokens", std::move(tokens)}});
  }
  return doc.dump();
}

}  // namespace tat
