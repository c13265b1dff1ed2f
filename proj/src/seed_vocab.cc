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

#include "tat/seed_vocab.h"

#include <algorithm>
#include <string_view>
#include <unordered_map>

#include "tat/error.h"
#include "tat/utf8.h"

namespace tat {
namespace {

struct Candidate {
  std::string_view piece;
  uint64_t frequency;
  size_t length;  // characters
};

bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  if (a.length != b.length) return a.length < b.length;
  return a.piece < b.piece;
}

}  // namespace

SeedVocab extract_seed(const CorpusHandle& corpus, size_t max_piece_len, size_t seed_size) {
  if (max_piece_len < 1) throw_error(ErrorCode::kConfig, "max_piece_len must be >= 1");
  if (seed_size < corpus.charset.size()) {
    throw_error(ErrorCode::kConfig,
                "seed_size " + std::to_string(seed_size) + " is below the charset size " +
                    std::to_string(corpus.charset.size()));
  }

  // Views point into corpus sentences, which outlive this function call.
  std::unordered_map<std::string_view, Candidate> counts;
  for (const auto& sentence : corpus.sentences) {
    const std::string_view text = sentence.text;
    const auto bounds = utf8::boundaries(text);
    const size_t n = bounds.size() - 1;
    for (size_t i = 0; i < n; ++i) {
      const size_t last = std::min(n, i + max_piece_len);
      for (size_t j = i + 1; j <= last; ++j) {
        const std::string_view piece = text.substr(bounds[i], bounds[j] - bounds[i]);
        auto [it, inserted] = counts.try_emplace(piece, Candidate{piece, 0, j - i});
        ++it->second.frequency;
      }
    }
  }

  std::vector<Candidate> ranked;
  ranked.reserve(counts.size());
  for (const auto& [piece, cand] : counts) ranked.push_back(cand);
  const size_t keep = std::min(seed_size, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), ranks_before);

  SeedVocab seed;
  seed.target_seed_size = seed_size;
  seed.char_union = corpus.charset;
  std::set<std::string_view> chosen_chars;
  for (size_t i = 0; i < keep; ++i) {
    seed.entries.push_back({std::string(ranked[i].piece), ranked[i].frequency});
    if (ranked[i].length == 1) chosen_chars.insert(ranked[i].piece);
  }
  std::vector<Candidate> missing;
  for (size_t i = keep; i < ranked.size(); ++i) {
    if (ranked[i].length == 1 && !chosen_chars.count(ranked[i].piece)) {
      missing.push_back(ranked[i]);
    }
  }
  std::sort(missing.begin(), missing.end(), ranks_before);
  for (const auto& c : missing) seed.entries.push_back({std::string(c.piece), c.frequency});
  return seed;
}

std::string seed_to_tsv(const SeedVocab& seed) {
  std::string out;
  for (const auto& e : seed.entries) {
    out += e.piece;
    out += '\t';
    out += std::to_string(e.frequency);
    out += '\n';
  }
  return out;
}

}  // namespace tat
