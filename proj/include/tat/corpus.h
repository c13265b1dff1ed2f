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

#ifndef TAT_CORPUS_H_
#define TAT_CORPUS_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tat {

// U+2581 LOWER ONE EIGHTH BLOCK.
inline constexpr std::string_view kDefaultMarker = "\xE2\x96\x81";

enum class LengthUnit { kCharacter, kWhitespaceWord };

LengthUnit parse_length_unit(std::string_view name);  // "char" | "word"
std::string_view length_unit_name(LengthUnit unit);

struct NormalizedSentence {
  // Marker-prefixed pieces, no raw whitespace.
  std::string text;
  // Characters (excluding whitespace) or whitespace-separated words of the
  // original line, depending on the corpus length unit.
  size_t original_length_units = 0;

  bool operator==(const NormalizedSentence&) const = default;
};

struct CorpusHandle {
  std::vector<NormalizedSentence> sentences;
  std::set<std::string> charset;  // single code points
  LengthUnit length_unit = LengthUnit::kCharacter;
  std::string marker{kDefaultMarker};

  bool operator==(const CorpusHandle&) const = default;
};

// NFC-normalizes `raw`, collapses whitespace runs (any Unicode white space,
// including tabs) into a single marker and prefixes the first word with a
// marker as well. Leading and trailing whitespace is dropped. Throws
// kEncoding on invalid UTF-8 and kMarkerCollision if `raw` already contains
// the marker.
std::string normalize(std::string_view raw, std::string_view marker = kDefaultMarker);

// Whitespace-collapsed, trimmed form of `raw` (after NFC).
std::string collapse_whitespace(std::string_view raw);

size_t count_length_units(std::string_view raw, LengthUnit unit);

// Concatenates pieces, turns every marker into a space and trims the single
// leading space produced by the sentence-initial marker.
std::string denormalize(std::span<const std::string> tokens,
                        std::string_view marker = kDefaultMarker);
std::string denormalize(std::string_view normalized,
                        std::string_view marker = kDefaultMarker);

CorpusHandle ingest(const std::string& path, LengthUnit unit,
                    std::string_view marker = kDefaultMarker);

// Same as ingest() over in-memory lines.
CorpusHandle ingest_lines(std::span<const std::string> lines, LengthUnit unit,
                          std::string_view marker = kDefaultMarker);

}  // namespace tat

#endif  // TAT_CORPUS_H_
