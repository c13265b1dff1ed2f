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

#include "tat/corpus.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "tat/error.h"
#include "tat/io.h"
#include "tat/utf8.h"

namespace tat {
namespace {

std::string nfc(std::string_view raw) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw_error(ErrorCode::kEncoding, "NFC normalizer unavailable");
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  if (norm->isNormalized(src, status) && U_SUCCESS(status)) return std::string(raw);
  status = U_ZERO_ERROR;
  icu::UnicodeString dst = norm->normalize(src, status);
  if (U_FAILURE(status)) throw_error(ErrorCode::kEncoding, "NFC normalization failed");
  std::string out;
  dst.toUTF8String(out);
  return out;
}

// Words of the NFC form, split on Unicode white space.
std::vector<std::string> words(std::string_view raw) {
  if (!utf8::is_valid(raw)) throw_error(ErrorCode::kEncoding, "invalid UTF-8 input");
  const std::string text = nfc(raw);
  std::vector<std::string> out;
  std::string current;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t begin = pos;
    const char32_t cp = utf8::decode(text, &pos);
    if (u_isUWhiteSpace(static_cast<UChar32>(cp))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.append(text, begin, pos - begin);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace

LengthUnit parse_length_unit(std::string_view name) {
  if (name == "char" || name == "character") return LengthUnit::kCharacter;
  if (name == "word") return LengthUnit::kWhitespaceWord;
  throw_error(ErrorCode::kInvalidArgument,
              "length unit must be 'char' or 'word', got '" + std::string(name) + "'");
}

std::string_view length_unit_name(LengthUnit unit) {
  return unit == LengthUnit::kCharacter ? "char" : "word";
}

std::string normalize(std::string_view raw, std::string_view marker) {
  if (marker.empty() || !utf8::is_valid(marker) || utf8::length(marker) != 1) {
    throw_error(ErrorCode::kInvalidArgument, "marker must be a single character");
  }
  const auto ws = words(raw);
  std::string out;
  for (const auto& w : ws) {
    if (w.find(marker) != std::string::npos) {
      throw_error(ErrorCode::kMarkerCollision,
                  "input already contains the boundary marker: " + w);
    }
    out.append(marker);
    out.append(w);
  }
  return out;
}

std::string collapse_whitespace(std::string_view raw) {
  std::string out;
  for (const auto& w : words(raw)) {
    if (!out.empty()) out.push_back(' ');
    out.append(w);
  }
  return out;
}

size_t count_length_units(std::string_view raw, LengthUnit unit) {
  const auto ws = words(raw);
  if (unit == LengthUnit::kWhitespaceWord) return ws.size();
  size_t n = 0;
  for (const auto& w : ws) n += utf8::length(w);
  return n;
}

std::string denormalize(std::string_view normalized, std::string_view marker) {
  std::string out;
  out.reserve(normalized.size());
  size_t pos = 0;
  while (pos < normalized.size()) {
    if (normalized.substr(pos, marker.size()) == marker) {
      out.push_back(' ');
      pos += marker.size();
    } else {
      out.push_back(normalized[pos++]);
    }
  }
  if (!out.empty() && out.front() == ' ') out.erase(0, 1);
  return out;
}

std::string denormalize(std::span<const std::string> tokens, std::string_view marker) {
  std::string joined;
  for (const auto& t : tokens) joined.append(t);
  return denormalize(std::string_view(joined), marker);
}

CorpusHandle ingest_lines(std::span<const std::string> lines, LengthUnit unit,
                          std::string_view marker) {
  CorpusHandle corpus;
  corpus.length_unit = unit;
  corpus.marker = std::string(marker);
  for (const auto& line : lines) {
    NormalizedSentence sentence;
    sentence.text = normalize(line, marker);
    if (sentence.text.empty()) continue;
    sentence.original_length_units = count_length_units(line, unit);
    for (auto& c : utf8::split_chars(sentence.text)) corpus.charset.insert(std::move(c));
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

CorpusHandle ingest(const std::string& path, LengthUnit unit, std::string_view marker) {
  const std::string content = read_file(path);
  if (!utf8::is_valid(content)) {
    throw_error(ErrorCode::kEncoding, "invalid UTF-8 in " + path);
  }
  const auto lines = split_lines(content);
  return ingest_lines(lines, unit, marker);
}

}  // namespace tat
