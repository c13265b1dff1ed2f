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

#include "tat/pipeline.h"

#include "json.hpp"
#include "tat/error.h"
#include "tat/io.h"
#include "tat/utf8.h"

namespace tat {

using json = nlohmann::json;

std::vector<std::string> read_text_lines(const std::string& path) {
  const std::string content = read_file(path);
  if (!utf8::is_valid(content)) throw_error(ErrorCode::kEncoding, "invalid UTF-8 in " + path);
  std::vector<std::string> out;
  for (auto& line : split_lines(content)) {
    if (!collapse_whitespace(line).empty()) out.push_back(std::move(line));
  }
  return out;
}

TrainResult run_train(const PipelineConfig& cfg, size_t target_size) {
  if (cfg.corpus.path.empty()) throw_error(ErrorCode::kValidation, "corpus.path: required for training");
  const CorpusHandle corpus = ingest(cfg.corpus.path, cfg.corpus.length_unit, cfg.corpus.marker);
  if (target_size < corpus.charset.size()) {
    throw_error(ErrorCode::kConfig, "train.target_size: target_size below charset floor (" +
                                        std::to_string(corpus.charset.size()) + ")");
  }
  const size_t seed_size = std::max(cfg.seed_size_for(target_size), corpus.charset.size());
  const SeedVocab seed = extract_seed(corpus, cfg.seed_vocab.max_piece_len, seed_size);
  TrainConfig tc = cfg.train;
  tc.target_size = target_size;
  tc.threads = cfg.threads;
  tc.seed = cfg.seed;
  return train(seed, corpus, tc);
}

std::string train_log_json(const TrainResult& result, size_t target_size) {
  json rounds = json::array();
  for (const auto& r : result.rounds) {
    rounds.push_back({{"round", r.index},
                      {"logliks", r.logliks},
                      {"final_loglik", r.final_loglik},
                      {"size_before", r.size_before},
                      {"size_after", r.size_after}});
  }
  json doc = {{"target_size", target_size},
              {"vocab_size", result.vocab.size()},
              {"charset_size", result.vocab.char_set().size()},
              {"rounds", std::move(rounds)},
              {"warnings", result.warnings}};
  return doc.dump(1) + "\n";
}

OriginalVocab load_original(const PipelineConfig& cfg) {
  if (cfg.original.path.empty()) {
    throw_error(ErrorCode::kValidation, "original.path: required for merging");
  }
  return import_original(cfg.original.path, cfg.import_options());
}

MergedVocab run_merge(const PipelineConfig& cfg, const ScoredVocab& task,
                      std::vector<std::string>* log) {
  return merge(load_original(cfg), task, cfg.merge, log);
}

MapEmbedResult run_map_embed(const MergedVocab& merged, const EmbeddingMatrix& orig,
                             const OriginalSegmenter& segmenter) {
  if (orig.rows != merged.original_size) {
    throw_error(ErrorCode::kDimensionMismatch,
                "matrix has " + std::to_string(orig.rows) + " rows but the original vocabulary has " +
                    std::to_string(merged.original_size) + " tokens");
  }
  MapEmbedResult out;
  out.plan = plan_mapping(merged, segmenter);
  out.matrix = extend_matrix(orig, out.plan, merged.size());
  return out;
}

std::vector<SweepRow> run_sweep(const PipelineConfig& cfg) {
  if (cfg.sweep_sizes.empty()) throw_error(ErrorCode::kValidation, "train.sizes: sweep needs at least one size");
  const OriginalVocab orig = load_original(cfg);
  const auto texts = read_text_lines(cfg.corpus.path);
  std::vector<SweepRow> rows;
  for (size_t size : cfg.sweep_sizes) {
    const TrainResult trained = run_train(cfg, size);
    const MergedVocab merged = merge(orig, trained.vocab, cfg.merge);
    SweepRow row;
    row.target_size = size;
    row.task_size = trained.vocab.size();
    row.merged_size = merged.size();
    row.increment = merged.size() - merged.original_size;
    row.efficiency = efficiency(texts, make_tokenizer(merged), EncodeOptions{},
                                cfg.corpus.length_unit, 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows, size_t original_size) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"target_size", r.target_size},
                   {"task_size", r.task_size},
                   {"original_size", original_size},
                   {"merged_size", r.merged_size},
                   {"increment", r.increment},
                   {"n_tok", r.efficiency.n_tok},
                   {"len_per_tok", r.efficiency.len_per_tok}});
  }
  return out.dump(1) + "\n";
}

}  // namespace tat
