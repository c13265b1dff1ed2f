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

#include "tat/embed_mapper.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <memory>

#include "json.hpp"
#include "tat/error.h"
#include "tat/io.h"
#include "tat/trie.h"

namespace tat {
namespace {

using json = nlohmann::json;

constexpr char kMagic[4] = {'T', 'A', 'T', 'E'};

void put_u32(uint32_t v, std::string* out) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

uint32_t get_u32(std::string_view bytes, size_t pos) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
  }
  return v;
}

// Longest match of `text` starting at `pos`; returns the byte length or 0.
size_t longest(const Trie& trie, std::string_view text, int32_t* id) {
  size_t best = 0;
  trie.for_each_prefix(text, [&](size_t len, int32_t value) {
    best = len;
    *id = value;
  });
  return best;
}

}  // namespace

void check_matrix(const EmbeddingMatrix& m) {
  if (static_cast<size_t>(m.rows) * m.dim != m.data.size()) {
    throw_error(ErrorCode::kDimensionMismatch, "matrix data does not hold rows * dim values");
  }
  for (float v : m.data) {
    if (!std::isfinite(v)) throw_error(ErrorCode::kFormat, "matrix contains a non-finite value");
  }
}

std::string matrix_to_binary(const EmbeddingMatrix& m) {
  check_matrix(m);
  std::string out(kMagic, sizeof(kMagic));
  put_u32(m.rows, &out);
  put_u32(m.dim, &out);
  out.reserve(out.size() + m.data.size() * 4);
  for (float v : m.data) put_u32(std::bit_cast<uint32_t>(v), &out);
  return out;
}

EmbeddingMatrix matrix_from_binary(std::string_view bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw_error(ErrorCode::kFormat, "not a TATE matrix file");
  }
  EmbeddingMatrix m;
  m.rows = get_u32(bytes, 4);
  m.dim = get_u32(bytes, 8);
  const size_t count = static_cast<size_t>(m.rows) * m.dim;
  if (bytes.size() != 12 + count * 4) {
    throw_error(ErrorCode::kDimensionMismatch, "matrix payload size does not match rows * dim");
  }
  m.data.resize(count);
  for (size_t i = 0; i < count; ++i) m.data[i] = std::bit_cast<float>(get_u32(bytes, 12 + 4 * i));
  check_matrix(m);
  return m;
}

std::string matrix_to_text(const EmbeddingMatrix& m) {
  check_matrix(m);
  std::string out;
  for (uint32_t r = 0; r < m.rows; ++r) {
    const auto row = m.row(r);
    for (uint32_t c = 0; c < m.dim; ++c) {
      if (c) out.push_back(' ');
      out += format_float(row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingMatrix matrix_from_text(std::string_view content) {
  EmbeddingMatrix m;
  bool first = true;
  for (const auto& line : split_lines(content)) {
    if (line.empty()) continue;
    uint32_t n = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      float v = 0.0f;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) throw_error(ErrorCode::kFormat, "bad matrix value in text row");
      m.data.push_back(v);
      ++n;
      p = res.ptr;
    }
    if (first) {
      m.dim = n;
      first = false;
    } else if (n != m.dim) {
      throw_error(ErrorCode::kDimensionMismatch, "text matrix rows have different widths");
    }
    ++m.rows;
  }
  check_matrix(m);
  return m;
}

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "binary" || name == "tate") return MatrixFormat::kBinary;
  if (name == "text") return MatrixFormat::kText;
  throw_error(ErrorCode::kInvalidArgument, "matrix format must be 'binary' or 'text'");
}

void write_matrix(const EmbeddingMatrix& m, const std::string& path, MatrixFormat format) {
  atomic_write(path, format == MatrixFormat::kBinary ? matrix_to_binary(m) : matrix_to_text(m));
}

EmbeddingMatrix read_matrix(const std::string& path, MatrixFormat format) {
  const std::string content = read_file(path);
  return format == MatrixFormat::kBinary ? matrix_from_binary(content) : matrix_from_text(content);
}

OriginalSegmenter greedy_segmenter(const MergedVocab& merged) {
  auto trie = std::make_shared<Trie>();
  for (size_t i = 0; i < merged.original_size; ++i) {
    const auto& e = merged.entries[i];
    if (e.never_sample) continue;
    trie->insert(e.raw.empty() ? e.token : e.raw, e.id);
  }
  const Convention convention = merged.convention;
  return [trie, convention](std::string_view surface) -> std::vector<int32_t> {
    std::vector<int32_t> ids;
    if (convention != Convention::kWordPiece) {
      size_t pos = 0;
      while (pos < surface.size()) {
        int32_t id = -1;
        const size_t len = longest(*trie, surface.substr(pos), &id);
        if (len == 0) return {};
        ids.push_back(id);
        pos += len;
      }
      return ids;
    }
    bool continuation = surface.rfind("##", 0) == 0;
    if (continuation) surface.remove_prefix(2);
    size_t start = 0;
    while (start <= surface.size()) {
      size_t stop = surface.find(' ', start);
      if (stop == std::string_view::npos) stop = surface.size();
      const std::string_view word = surface.substr(start, stop - start);
      size_t pos = 0;
      while (pos < word.size()) {
        int32_t id = -1;
        size_t len = 0;
        if (continuation || pos > 0) {
          const std::string probe = "##" + std::string(word.substr(pos));
          len = longest(*trie, probe, &id);
          len = len > 2 ? len - 2 : 0;
        } else {
          len = longest(*trie, word, &id);
        }
        if (len == 0) return {};
        ids.push_back(id);
        pos += len;
      }
      continuation = false;
      start = stop + 1;
    }
    return ids;
  };
}

MappingPlan plan_mapping(const MergedVocab& merged, const OriginalSegmenter& segmenter) {
  MappingPlan plan;
  for (const auto& e : merged.entries) {
    if (e.origin != Origin::kTask) continue;
    const std::string surface = to_original_surface(e.token, merged.convention, merged.marker);
    MappingItem item{e.id, e.token, segmenter(surface)};
    if (item.source_ids.empty()) {
      throw_error(ErrorCode::kSegmentationFailure,
                  "original tokenizer produced no subwords for '" + e.token + "'");
    }
    for (int32_t id : item.source_ids) {
      if (id < 0 || static_cast<size_t>(id) >= merged.original_size) {
        throw_error(ErrorCode::kUnknownTokenId, "source id " + std::to_string(id) +
                                                    " is outside the original vocabulary");
      }
    }
    plan.items.push_back(std::move(item));
  }
  return plan;
}

EmbeddingMatrix extend_matrix(const EmbeddingMatrix& orig, const MappingPlan& plan,
                              size_t merged_size) {
  check_matrix(orig);
  if (merged_size < orig.rows) {
    throw_error(ErrorCode::kDimensionMismatch, "merged size is smaller than the original matrix");
  }
  const size_t orig_rows = orig.rows;
  // Plans start at the original vocabulary size, so a different first id
  // means the matrix does not belong to the vocabulary the plan was built on.
  if (!plan.items.empty() && plan.items.front().new_id != static_cast<int32_t>(orig_rows)) {
    throw_error(ErrorCode::kDimensionMismatch,
                "matrix has " + std::to_string(orig_rows) + " rows but the plan's first new id is " +
                    std::to_string(plan.items.front().new_id));
  }
  if (plan.items.size() != merged_size - orig_rows) {
    throw_error(ErrorCode::kPlanGap, "plan has " + std::to_string(plan.items.size()) +
                                         " items for " + std::to_string(merged_size - orig_rows) +
                                         " new tokens");
  }
  EmbeddingMatrix out;
  out.rows = static_cast<uint32_t>(merged_size);
  out.dim = orig.dim;
  out.data.resize(merged_size * orig.dim);
  std::copy(orig.data.begin(), orig.data.end(), out.data.begin());
  std::vector<double> acc(orig.dim);
  for (size_t k = 0; k < plan.items.size(); ++k) {
    const auto& item = plan.items[k];
    if (item.new_id != static_cast<int32_t>(orig_rows + k)) {
      throw_error(ErrorCode::kPlanGap, "no plan item for new id " + std::to_string(orig_rows + k));
    }
    if (item.source_ids.empty()) {
      throw_error(ErrorCode::kPlanGap, "plan item for id " + std::to_string(item.new_id) + " has no sources");
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int32_t src : item.source_ids) {
      if (src < 0 || static_cast<size_t>(src) >= orig_rows) {
        throw_error(ErrorCode::kDimensionMismatch, "source id " + std::to_string(src) +
                                                       " is outside the original matrix");
      }
      const auto row = orig.row(static_cast<size_t>(src));
      for (uint32_t c = 0; c < orig.dim; ++c) acc[c] += static_cast<double>(row[c]);
    }
    const double n = static_cast<double>(item.source_ids.size());
    float* dst = out.data.data() + static_cast<size_t>(item.new_id) * orig.dim;
    for (uint32_t c = 0; c < orig.dim; ++c) dst[c] = static_cast<float>(acc[c] / n);
  }
  return out;
}

std::string plan_to_json(const MappingPlan& plan) {
  json doc = json::array();
  for (const auto& item : plan.items) {
    doc.push_back({{"new_id", item.new_id}, {"token", item.token}, {"source_ids", item.source_ids}});
  }
  return doc.dump(1) + "\n";
}

MappingPlan plan_from_json(std::string_view content) {
  MappingPlan plan;
  try {
    const json doc = json::parse(content);
    if (!doc.is_array()) throw_error(ErrorCode::kFormat, "mapping plan JSON must be an array");
    for (const auto& it : doc) {
      plan.items.push_back({it.at("new_id").get<int32_t>(), it.at("token").get<std::string>(),
                            it.at("source_ids").get<std::vector<int32_t>>()});
    }
  } catch (const json::exception& e) {
    throw_error(ErrorCode::kFormat, std::string("mapping plan JSON: ") + e.what());
  }
  return plan;
}

void write_plan(const MappingPlan& plan, const std::string& path) {
  atomic_write(path, plan_to_json(plan));
}

MappingPlan read_plan(const std::string& path) { return plan_from_json(read_file(path)); }

}  // namespace tat
