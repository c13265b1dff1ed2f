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

#include "tat/vocab_merge.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "tat/error.h"
#include "tat/io.h"
#include "tat/utf8.h"

namespace tat {
namespace {

using json = nlohmann::json;

constexpr std::string_view kSpMarker = "\xE2\x96\x81";  // ▁
constexpr std::string_view kByteSpace = "\xC4\xA0";     // Ġ

// GPT-2 bytes_to_unicode table: printable Latin-1 bytes map to themselves,
// the remaining bytes to U+0100 onwards in byte order.
const std::array<char32_t, 256>& byte_to_char() {
  static const std::array<char32_t, 256> table = [] {
    std::array<char32_t, 256> t{};
    std::array<bool, 256> direct{};
    for (int b = '!'; b <= '~'; ++b) direct[b] = true;
    for (int b = 0xA1; b <= 0xAC; ++b) direct[b] = true;
    for (int b = 0xAE; b <= 0xFF; ++b) direct[b] = true;
    char32_t next = 256;
    for (int b = 0; b < 256; ++b) t[b] = direct[b] ? static_cast<char32_t>(b) : next++;
    return t;
  }();
  return table;
}

const std::unordered_map<char32_t, unsigned char>& char_to_byte() {
  static const auto table = [] {
    std::unordered_map<char32_t, unsigned char> t;
    const auto& fwd = byte_to_char();
    for (int b = 0; b < 256; ++b) t[fwd[b]] = static_cast<unsigned char>(b);
    return t;
  }();
  return table;
}

std::string replace_all(std::string_view s, std::string_view from, std::string_view to) {
  if (from == to) return std::string(s);
  std::string out;
  size_t pos = 0;
  while (pos < s.size()) {
    if (s.substr(pos, from.size()) == from) {
      out.append(to);
      pos += from.size();
    } else {
      out.push_back(s[pos++]);
    }
  }
  return out;
}

double lowest_task_score(const MergedVocab& m, const ScoredVocab& task) {
  double lowest = task.min_score();
  for (const auto& e : m.entries) {
    if (e.origin != Origin::kOriginal) lowest = std::min(lowest, e.score);
  }
  return lowest;
}

// Applies the task vocabulary onto `m` and rescores the score-less original
// tokens. `formula_mask[i]` marks original entries that take the formula.
MergedVocab apply_task(MergedVocab m, const ScoredVocab& task, const MergeConfig& cfg,
                       const std::vector<char>& formula_mask, std::vector<std::string>* log) {
  const double lowest = lowest_task_score(m, task);
  double big = 0.0;
  if (cfg.big_score) {
    big = *cfg.big_score;
  } else {
    if (!std::isfinite(lowest)) {
      throw_error(ErrorCode::kConfig, "big_score cannot be derived from an empty task vocabulary");
    }
    big = std::fabs(lowest);
  }
  if (!(big > 0.0) || !std::isfinite(big)) {
    throw_error(ErrorCode::kConfig, "big_score must be a positive finite magnitude, got " +
                                        format_double(big));
  }
  m.big_score = big;

  std::unordered_map<std::string, int32_t> lookup;
  for (const auto& e : m.entries) lookup.try_emplace(e.token, e.id);

  std::vector<const ScoredPiece*> ordered;
  for (const auto& p : task.entries) ordered.push_back(&p);
  std::stable_sort(ordered.begin(), ordered.end(), [](const ScoredPiece* a, const ScoredPiece* b) {
    if (a->score != b->score) return a->score > b->score;
    return a->token < b->token;
  });
  for (const ScoredPiece* p : ordered) {
    auto it = lookup.find(p->token);
    if (it == lookup.end()) {
      const auto id = static_cast<int32_t>(m.entries.size());
      m.entries.push_back({id, p->token, p->score, Origin::kTask, false, ""});
      lookup.emplace(p->token, id);
      continue;
    }
    auto& e = m.entries[static_cast<size_t>(it->second)];
    if (e.never_sample) {
      if (log) log->push_back("task token '" + p->token + "' equals a special token; skipped");
      continue;
    }
    if (e.origin == Origin::kOriginal) e.origin = Origin::kOverlap;
    e.score = p->score;
  }

  for (size_t i = 0; i < m.original_size; ++i) {
    auto& e = m.entries[i];
    if (e.origin != Origin::kOriginal || e.never_sample || !formula_mask[i]) continue;
    e.score = assign_score(e.token, big);
    if (std::isfinite(lowest) && !(e.score < lowest)) {
      throw_error(ErrorCode::kConfig, "big_score " + format_double(big) + " too small: token '" +
                                          e.token + "' would score " + format_double(e.score) +
                                          " >= lowest task score " + format_double(lowest));
    }
  }
  return m;
}

}  // namespace

Convention parse_convention(std::string_view name) {
  if (name == "sentencepiece") return Convention::kSentencePiece;
  if (name == "byte_level") return Convention::kByteLevel;
  if (name == "wordpiece") return Convention::kWordPiece;
  throw_error(ErrorCode::kInvalidArgument, "unknown convention '" + std::string(name) + "'");
}

std::string_view convention_name(Convention c) {
  switch (c) {
    case Convention::kSentencePiece: return "sentencepiece";
    case Convention::kByteLevel: return "byte_level";
    case Convention::kWordPiece: return "wordpiece";
  }
  return "sentencepiece";
}

OriginalFormat parse_original_format(std::string_view name) {
  if (name == "list") return OriginalFormat::kList;
  if (name == "tsv") return OriginalFormat::kTsv;
  if (name == "json") return OriginalFormat::kJson;
  throw_error(ErrorCode::kInvalidArgument, "unknown original vocabulary format '" +
                                               std::string(name) + "'");
}

std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::kOriginal: return "original";
    case Origin::kTask: return "task";
    case Origin::kOverlap: return "overlap";
  }
  return "original";
}

Origin parse_origin(std::string_view name) {
  if (name == "original") return Origin::kOriginal;
  if (name == "task") return Origin::kTask;
  if (name == "overlap") return Origin::kOverlap;
  throw_error(ErrorCode::kFormat, "unknown origin '" + std::string(name) + "'");
}

bool looks_special(std::string_view t) {
  if (t.size() < 3) return false;
  if (t.front() == '<' && t.back() == '>') {
    return t.find(' ') == std::string_view::npos;
  }
  if (t.front() == '[' && t.back() == ']') {
    for (char c : t.substr(1, t.size() - 2)) {
      const bool word = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                        c == '_';
      if (!word) return false;
    }
    return true;
  }
  return false;
}

Convention detect_convention(const std::vector<OriginalEntry>& entries) {
  bool wordpiece = false;
  for (const auto& e : entries) {
    if (e.special) continue;
    if (e.token.rfind(kByteSpace, 0) == 0) return Convention::kByteLevel;
    if (e.token.size() > 2 && e.token.rfind("##", 0) == 0) wordpiece = true;
  }
  return wordpiece ? Convention::kWordPiece : Convention::kSentencePiece;
}

std::string to_internal(std::string_view token, Convention convention, std::string_view marker) {
  switch (convention) {
    case Convention::kSentencePiece:
      return replace_all(token, kSpMarker, marker);
    case Convention::kWordPiece:
      if (token.size() > 2 && token.rfind("##", 0) == 0) return std::string(token.substr(2));
      return std::string(marker) + std::string(token);
    case Convention::kByteLevel: {
      if (!utf8::is_valid(token)) return std::string(token);
      const auto& table = char_to_byte();
      std::string bytes;
      size_t pos = 0;
      while (pos < token.size()) {
        auto it = table.find(utf8::decode(token, &pos));
        if (it == table.end()) return std::string(token);
        bytes.push_back(static_cast<char>(it->second));
      }
      if (!utf8::is_valid(bytes)) return std::string(token);
      return replace_all(bytes, " ", marker);
    }
  }
  return std::string(token);
}

std::string to_original_surface(std::string_view token, Convention convention,
                                std::string_view marker) {
  switch (convention) {
    case Convention::kSentencePiece:
      return replace_all(token, marker, kSpMarker);
    case Convention::kWordPiece: {
      if (token.rfind(marker, 0) == 0) return replace_all(token.substr(marker.size()), marker, " ");
      return "##" + replace_all(token, marker, " ");
    }
    case Convention::kByteLevel: {
      const std::string bytes = replace_all(token, marker, " ");
      const auto& table = byte_to_char();
      std::string out;
      for (unsigned char b : bytes) utf8::append(table[b], &out);
      return out;
    }
  }
  return std::string(token);
}

OriginalVocab parse_original(std::string_view content, const ImportOptions& opts) {
  if (!utf8::is_valid(content)) throw_error(ErrorCode::kEncoding, "original vocabulary is not UTF-8");
  OriginalVocab vocab;
  switch (opts.format) {
    case OriginalFormat::kList:
      for (auto& line : split_lines(content)) {
        if (!line.empty()) vocab.entries.push_back({std::move(line), false, std::nullopt});
      }
      break;
    case OriginalFormat::kTsv: {
      vocab.has_scores = true;
      size_t line_no = 0;
      for (const auto& line : split_lines(content)) {
        ++line_no;
        if (line.empty()) continue;
        const size_t tab = line.rfind('\t');
        double score = 0.0;
        const char* first = line.data() + (tab == std::string::npos ? 0 : tab + 1);
        const char* last = line.data() + line.size();
        auto res = std::from_chars(first, last, score);
        if (tab == std::string::npos || tab == 0 || res.ec != std::errc() || res.ptr != last) {
          throw_error(ErrorCode::kFormat, "original vocabulary line " + std::to_string(line_no) +
                                              ": expected token<TAB>score");
        }
        vocab.entries.push_back({line.substr(0, tab), false, score});
      }
      break;
    }
    case OriginalFormat::kJson: {
      json doc;
      try {
        doc = json::parse(content);
      } catch (const json::exception& e) {
        throw_error(ErrorCode::kFormat, std::string("original vocabulary JSON: ") + e.what());
      }
      if (!doc.is_object()) throw_error(ErrorCode::kFormat, "original vocabulary JSON must map token -> id");
      std::vector<std::optional<std::string>> by_id(doc.size());
      for (const auto& [token, id] : doc.items()) {
        if (!id.is_number_integer() || id.get<int64_t>() < 0 ||
            id.get<uint64_t>() >= by_id.size() || by_id[id.get<size_t>()]) {
          throw_error(ErrorCode::kFormat, "original vocabulary ids must be dense 0..n-1 (token '" +
                                              token + "')");
        }
        by_id[id.get<size_t>()] = token;
      }
      for (auto& t : by_id) vocab.entries.push_back({std::move(*t), false, std::nullopt});
      break;
    }
  }

  std::unordered_set<std::string> explicit_specials(opts.special_tokens.begin(),
                                                    opts.special_tokens.end());
  for (auto& e : vocab.entries) {
    e.special = explicit_specials.count(e.token) > 0 || (opts.detect_specials && looks_special(e.token));
  }
  vocab.convention = opts.convention ? *opts.convention : detect_convention(vocab.entries);
  return vocab;
}

OriginalVocab import_original(const std::string& path, const ImportOptions& opts) {
  return parse_original(read_file(path), opts);
}

double assign_score(std::string_view token, double big_score) {
  const size_t len = utf8::length(token);
  if (len == 0) throw_error(ErrorCode::kZeroLength, "cannot score an empty token");
  const double l = static_cast<double>(len);
  return -big_score * (l + 1.0) / l;
}

double default_big_score(const ScoredVocab& task) {
  if (task.entries.empty()) throw_error(ErrorCode::kEmptyInput, "task vocabulary is empty");
  return std::fabs(task.min_score());
}

MergedVocab merge(const OriginalVocab& orig, const ScoredVocab& task, const MergeConfig& cfg,
                  std::vector<std::string>* log) {
  MergedVocab m;
  m.marker = task.marker;
  m.convention = orig.convention;
  m.original_size = orig.entries.size();
  std::unordered_set<std::string_view> raw_seen;
  std::unordered_set<std::string> translated_seen;
  std::vector<char> formula(orig.entries.size(), 1);
  size_t translated = 0;
  for (size_t i = 0; i < orig.entries.size(); ++i) {
    const auto& o = orig.entries[i];
    if (!raw_seen.insert(o.token).second) {
      throw_error(ErrorCode::kDuplicateToken, "original vocabulary repeats '" + o.token + "'");
    }
    MergedEntry e;
    e.id = static_cast<int32_t>(i);
    e.raw = o.token;
    e.never_sample = o.special;
    e.origin = Origin::kOriginal;
    if (o.special) {
      e.token = o.token;
      e.score = kSpecialTokenScore;
    } else {
      e.token = to_internal(o.token, orig.convention, m.marker);
      if (e.token != o.token) ++translated;
      if (cfg.keep_original_scores && o.score) {
        e.score = *o.score;
        formula[i] = 0;
      }
    }
    if (!translated_seen.insert(e.token).second && log) {
      log->push_back("original token '" + o.token + "' translates to an already present form '" +
                     e.token + "'; only the first id is reachable");
    }
    m.entries.push_back(std::move(e));
  }
  if (log) {
    log->push_back("translated " + std::to_string(translated) + " original tokens from " +
                   std::string(convention_name(orig.convention)) + " convention");
  }
  return apply_task(std::move(m), task, cfg, formula, log);
}

MergedVocab extend(const MergedVocab& merged, const ScoredVocab& task, const MergeConfig& cfg,
                   std::vector<std::string>* log) {
  std::vector<char> formula(merged.original_size, cfg.keep_original_scores ? 0 : 1);
  return apply_task(merged, task, cfg, formula, log);
}

Tokenizer make_tokenizer(const MergedVocab& merged) {
  std::vector<TokenInfo> tokens;
  tokens.reserve(merged.size());
  for (const auto& e : merged.entries) tokens.push_back({e.token, e.score, e.never_sample});
  return Tokenizer(std::move(tokens), merged.marker);
}

std::string merged_to_json(const MergedVocab& m) {
  json entries = json::array();
  for (const auto& e : m.entries) {
    json item = {{"id", e.id},       {"token", e.token},
                 {"score", e.score}, {"origin", std::string(origin_name(e.origin))},
                 {"never_sample", e.never_sample}};
    if (!e.raw.empty() && e.raw != e.token) item["raw"] = e.raw;
    entries.push_back(std::move(item));
  }
  json doc;
  doc["version"] = 1;
  doc["marker"] = m.marker;
  doc["big_score"] = m.big_score;
  doc["original_size"] = m.original_size;
  doc["convention"] = std::string(convention_name(m.convention));
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

MergedVocab merged_from_json(std::string_view content) {
  MergedVocab m;
  try {
    const json doc = json::parse(content);
    m.marker = doc.at("marker").get<std::string>();
    m.big_score = doc.at("big_score").get<double>();
    m.original_size = doc.at("original_size").get<size_t>();
    m.convention = parse_convention(doc.value("convention", std::string("sentencepiece")));
    for (const auto& item : doc.at("entries")) {
      MergedEntry e;
      e.id = item.at("id").get<int32_t>();
      e.token = item.at("token").get<std::string>();
      e.score = item.at("score").get<double>();
      e.origin = parse_origin(item.at("origin").get<std::string>());
      e.never_sample = item.at("never_sample").get<bool>();
      if (static_cast<size_t>(e.id) < m.original_size) e.raw = item.value("raw", e.token);
      if (e.id != static_cast<int32_t>(m.entries.size())) {
        throw_error(ErrorCode::kFormat, "merged vocabulary ids must be dense and ordered");
      }
      m.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kFormat, std::string("merged vocabulary JSON: ") + e.what());
  }
  if (m.original_size > m.entries.size()) {
    throw_error(ErrorCode::kFormat, "original_size exceeds the number of entries");
  }
  return m;
}

void write_merged(const MergedVocab& merged, const std::string& path) {
  atomic_write(path, merged_to_json(merged));
}

MergedVocab read_merged(const std::string& path) { return merged_from_json(read_file(path)); }

}  // namespace tat
