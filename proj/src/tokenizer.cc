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

#include "tat/tokenizer.h"

#include "tat/error.h"
#include "tat/utf8.h"

namespace tat {
namespace {

Segmentation run(const Lattice& lat, const EncodeOptions& opts) {
  if (opts.mode == EncodeMode::kSample) return sample(lat, opts.sampler, opts.draw_index);
  return viterbi(lat);
}

void append(Segmentation* out, Segmentation&& part) {
  out->token_ids.insert(out->token_ids.end(), part.token_ids.begin(), part.token_ids.end());
  for (auto& p : part.pieces) out->pieces.push_back(std::move(p));
  out->logprob += part.logprob;
}

}  // namespace

Tokenizer::Tokenizer(std::vector<TokenInfo> tokens, std::string marker)
    : tokens_(std::move(tokens)), marker_(std::move(marker)) {
  scores_.reserve(tokens_.size());
  for (size_t i = 0; i < tokens_.size(); ++i) {
    const auto& t = tokens_[i];
    scores_.push_back(t.score);
    all_ids_.insert(t.piece, static_cast<int32_t>(i));
    if (!t.never_sample && !t.piece.empty()) trie_.insert(t.piece, static_cast<int32_t>(i));
  }
}

Tokenizer Tokenizer::from_vocab(const ScoredVocab& vocab) {
  std::vector<TokenInfo> tokens;
  tokens.reserve(vocab.size());
  for (const auto& e : vocab.entries) tokens.push_back({e.token, e.score, false});
  return Tokenizer(std::move(tokens), vocab.marker);
}

const TokenInfo& Tokenizer::token(int32_t id) const {
  if (id < 0 || static_cast<size_t>(id) >= tokens_.size()) {
    throw_error(ErrorCode::kUnknownTokenId, "unknown token id " + std::to_string(id));
  }
  return tokens_[static_cast<size_t>(id)];
}

std::optional<int32_t> Tokenizer::find(std::string_view piece) const { return all_ids_.find(piece); }

Lattice Tokenizer::lattice(std::string_view normalized) const {
  return build_lattice(normalized, trie_, scores_);
}

Segmentation Tokenizer::encode_normalized(std::string_view normalized,
                                          const EncodeOptions& opts) const {
  if (!opts.unk_id) return run(lattice(normalized), opts);

  Segmentation out;
  const auto bounds = utf8::boundaries(normalized);
  size_t run_start = 0;
  auto flush = [&](size_t end) {
    if (end > run_start) {
      const auto text = normalized.substr(run_start, end - run_start);
      append(&out, run(lattice(text), opts));
    }
  };
  for (size_t i = 0; i + 1 < bounds.size(); ++i) {
    const auto ch = normalized.substr(bounds[i], bounds[i + 1] - bounds[i]);
    if (trie_.find(ch)) continue;
    flush(bounds[i]);
    out.token_ids.push_back(*opts.unk_id);
    out.pieces.emplace_back(ch);
    run_start = bounds[i + 1];
  }
  flush(normalized.size());
  return out;
}

Segmentation Tokenizer::encode(std::string_view raw, const EncodeOptions& opts) const {
  return encode_normalized(normalize(raw, marker_), opts);
}

std::vector<Segmentation> Tokenizer::nbest(std::string_view raw, size_t n) const {
  return tat::nbest(lattice(normalize(raw, marker_)), n);
}

std::string Tokenizer::decode(std::span<const int32_t> ids) const {
  std::string joined;
  for (int32_t id : ids) joined += token(id).piece;
  return denormalize(std::string_view(joined), marker_);
}

}  // namespace tat
