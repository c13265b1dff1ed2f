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

#include "tat/scored_vocab.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "tat/error.h"
#include "tat/io.h"
#include "tat/utf8.h"

namespace tat {

std::set<std::string> ScoredVocab::char_set() const {
  std::set<std::string> out;
  for (const auto& e : entries) {
    if (utf8::length(e.token) == 1) out.insert(e.token);
  }
  return out;
}

double ScoredVocab::min_score() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) m = std::min(m, e.score);
  return m;
}

void sort_by_score(ScoredVocab* vocab) {
  std::sort(vocab->entries.begin(), vocab->entries.end(),
            [](const ScoredPiece& a, const ScoredPiece& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.token < b.token;
            });
}

std::string vocab_to_tsv(const ScoredVocab& vocab) {
  std::string out = "# version: 1\n# marker: " + vocab.marker +
                    "\n# charset_size: " + std::to_string(vocab.char_set().size()) + "\n";
  for (const auto& e : vocab.entries) {
    out += e.token;
    out += '\t';
    out += format_double(e.score);
    out += '\n';
  }
  return out;
}

ScoredVocab vocab_from_tsv(std::string_view content) {
  if (!utf8::is_valid(content)) throw_error(ErrorCode::kEncoding, "vocabulary is not UTF-8");
  ScoredVocab vocab;
  std::unordered_set<std::string> seen;
  size_t line_no = 0;
  for (const auto& line : split_lines(content)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      constexpr std::string_view kMarkerKey = "# marker: ";
      if (line.rfind(kMarkerKey, 0) == 0) vocab.marker = line.substr(kMarkerKey.size());
      continue;
    }
    const size_t tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) {
      throw_error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": expected token<TAB>score");
    }
    ScoredPiece piece;
    piece.token = line.substr(0, tab);
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto res = std::from_chars(first, last, piece.score);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(piece.score)) {
      throw_error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": bad score");
    }
    if (!seen.insert(piece.token).second) {
      throw_error(ErrorCode::kDuplicateToken, "duplicate token '" + piece.token + "'");
    }
    vocab.entries.push_back(std::move(piece));
  }
  return vocab;
}

void write_vocab(const ScoredVocab& vocab, const std::string& path) {
  atomic_write(path, vocab_to_tsv(vocab));
}

ScoredVocab read_vocab(const std::string& path) { return vocab_from_tsv(read_file(path)); }

}  // namespace tat
