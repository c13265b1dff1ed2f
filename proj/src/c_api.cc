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

#include "tat/c_api.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tat/error.h"
#include "tat/io.h"
#include "tat/metrics.h"
#include "tat/pipeline.h"
#include "tat/pipeline_config.h"
#include "tat/scored_vocab.h"
#include "tat/tokenizer.h"
#include "tat/vocab_merge.h"

struct tat_config {
  tat::PipelineConfig cfg;
};

struct tat_tokenizer {
  std::optional<tat::MergedVocab> merged;
  tat::Tokenizer tokenizer;
};

struct tat_segmentation {
  tat::Segmentation seg;
};

struct tat_segmentation_list {
  std::vector<tat_segmentation> items;
};

struct tat_matrix {
  tat::EmbeddingMatrix m;
};

struct tat_plan {
  tat::MappingPlan plan;
};

namespace {

using json = nlohmann::json;

thread_local std::string g_last_error;

tat_status fail(tat_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
tat_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TAT_OK;
  } catch (const tat::Error& e) {
    return fail(static_cast<tat_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TAT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TAT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TAT_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) tat::throw_error(tat::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void set_out(char** out, const std::string& s) {
  if (out != nullptr) *out = dup_string(s);
}

tat::EncodeOptions to_options(const tat_encode_options* opts) {
  tat_encode_options local;
  tat_encode_options_init(&local);
  if (opts != nullptr) local = *opts;
  tat::EncodeOptions out;
  require(local.mode == TAT_MODE_VITERBI || local.mode == TAT_MODE_SAMPLE, "unknown encode mode");
  out.mode = local.mode == TAT_MODE_SAMPLE ? tat::EncodeMode::kSample : tat::EncodeMode::kViterbi;
  out.sampler.alpha = local.alpha;
  out.sampler.seed = local.seed;
  out.draw_index = local.draw_index;
  if (local.unk_id >= 0) out.unk_id = local.unk_id;
  return out;
}

std::string join_path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string resolve_dir(const tat_config* cfg, const char* output_dir) {
  return output_dir != nullptr ? std::string(output_dir) : cfg->cfg.output_dir;
}

// Every stage leaves the configuration it actually ran with next to its
// outputs, after TAT_SEED and command-line overrides were applied, as
// <stage>.resolved.yaml so later stages do not overwrite earlier echoes.
void write_resolved(const tat::PipelineConfig& cfg, const std::string& dir, const char* stage) {
  tat::atomic_write(join_path(dir, (std::string(stage) + ".resolved.yaml").c_str()),
                    tat::config_to_yaml(cfg) + "\n");
}

bool looks_like_json(const std::string& content) {
  for (char c : content) {
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') continue;
    return c == '{';
  }
  return false;
}

}  // namespace

extern "C" {

const char* tat_version(void) { return "0.1.0"; }

const char* tat_status_name(tat_status status) {
  switch (status) {
    case TAT_OK:
      return "Ok";
    case TAT_ERR_INTERNAL:
      return "InternalError";
    default:
      break;
  }
  if (status >= TAT_ERR_IO && status <= TAT_ERR_INVALID_ARGUMENT) {
    // error_code_name() returns views of string literals.
    return tat::error_code_name(static_cast<tat::ErrorCode>(status)).data();
  }
  return "UnknownStatus";
}

const char* tat_last_error_message(void) { return g_last_error.c_str(); }

void tat_string_free(char* s) { std::free(s); }

tat_status tat_config_new(tat_config** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = new tat_config();
  });
}

tat_status tat_config_load(const char* path, tat_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    auto cfg = std::make_unique<tat_config>();
    cfg->cfg = tat::load_config(path);
    *out = cfg.release();
  });
}

tat_status tat_config_parse(const char* yaml, tat_config** out) {
  return guarded([&] {
    require(yaml != nullptr && out != nullptr, "null argument");
    auto cfg = std::make_unique<tat_config>();
    cfg->cfg = tat::parse_config(yaml);
    *out = cfg.release();
  });
}

tat_status tat_config_set(tat_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg != nullptr && key != nullptr && value != nullptr, "null argument");
    tat::set_field(&cfg->cfg, key, value);
  });
}

tat_status tat_config_get(const tat_config* cfg, const char* key, char** out) {
  return guarded([&] {
    require(cfg != nullptr && key != nullptr && out != nullptr, "null argument");
    *out = dup_string(tat::get_field(cfg->cfg, key));
  });
}

tat_status tat_config_validate(tat_config* cfg) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    tat::validate(&cfg->cfg);
  });
}

tat_status tat_config_to_yaml(const tat_config* cfg, char** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "null argument");
    *out = dup_string(tat::config_to_yaml(cfg->cfg));
  });
}

void tat_config_free(tat_config* cfg) { delete cfg; }

tat_status tat_train(tat_config* cfg, const char* output_dir, char** summary_json) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    tat::validate(&cfg->cfg);
    const std::string dir = resolve_dir(cfg, output_dir);
    const size_t n = cfg->cfg.train.target_size;
    const tat::TrainResult result = tat::run_train(cfg->cfg, n);
    const std::string vocab_path = join_path(dir, "vocab.tsv");
    tat::write_vocab(result.vocab, vocab_path);
    tat::atomic_write(join_path(dir, "train_log.json"), tat::train_log_json(result, n));
    write_resolved(cfg->cfg, dir, "train");
    json summary = {{"command", "train"},
                    {"vocab", vocab_path},
                    {"vocab_size", result.vocab.size()},
                    {"rounds", result.rounds.size()},
                    {"warnings", result.warnings}};
    set_out(summary_json, summary.dump());
  });
}

tat_status tat_merge(tat_config* cfg, const char* task_vocab_path, const char* output_dir,
                     char** summary_json) {
  return guarded([&] {
    require(cfg != nullptr && task_vocab_path != nullptr, "null argument");
    tat::validate(&cfg->cfg);
    const std::string dir = resolve_dir(cfg, output_dir);
    const tat::ScoredVocab task = tat::read_vocab(task_vocab_path);
    std::vector<std::string> log;
    const tat::MergedVocab merged = tat::run_merge(cfg->cfg, task, &log);
    const std::string path = join_path(dir, "merged.json");
    tat::write_merged(merged, path);
    write_resolved(cfg->cfg, dir, "merge");
    size_t overlap = 0;
    for (const auto& e : merged.entries) overlap += e.origin == tat::Origin::kOverlap;
    json summary = {{"command", "merge"},
                    {"merged", path},
                    {"original_size", merged.original_size},
                    {"task_size", task.size()},
                    {"merged_size", merged.size()},
                    {"overlap", overlap},
                    {"increment", merged.size() - merged.original_size},
                    {"big_score", merged.big_score},
                    {"log", log}};
    set_out(summary_json, summary.dump());
  });
}

tat_status tat_map_embed(tat_config* cfg, const char* merged_path, const char* output_dir,
                         char** summary_json) {
  return guarded([&] {
    require(cfg != nullptr && merged_path != nullptr, "null argument");
    tat::validate(&cfg->cfg);
    if (cfg->cfg.embedding.path.empty()) {
      tat::throw_error(tat::ErrorCode::kValidation, "embedding.path: required for map-embed");
    }
    const std::string dir = resolve_dir(cfg, output_dir);
    const tat::MergedVocab merged = tat::read_merged(merged_path);
    const tat::EmbeddingMatrix orig =
        tat::read_matrix(cfg->cfg.embedding.path, cfg->cfg.embedding.format);
    const tat::MapEmbedResult result =
        tat::run_map_embed(merged, orig, tat::greedy_segmenter(merged));
    const std::string plan_path = join_path(dir, "plan.json");
    const std::string matrix_path = join_path(dir, "embeddings.tate");
    tat::write_plan(result.plan, plan_path);
    tat::write_matrix(result.matrix, matrix_path, tat::MatrixFormat::kBinary);
    write_resolved(cfg->cfg, dir, "map-embed");
    json summary = {{"command", "map-embed"},
                    {"plan", plan_path},
                    {"matrix", matrix_path},
                    {"new_rows", result.plan.items.size()},
                    {"rows", result.matrix.rows},
                    {"dim", result.matrix.dim}};
    set_out(summary_json, summary.dump());
  });
}

tat_status tat_sweep(tat_config* cfg, const char* output_dir, char** summary_json) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    tat::validate(&cfg->cfg);
    const std::string dir = resolve_dir(cfg, output_dir);
    const auto rows = tat::run_sweep(cfg->cfg);
    const size_t original_size = rows.empty() ? 0 : rows.front().merged_size - rows.front().increment;
    const std::string report = tat::sweep_to_json(rows, original_size);
    const std::string path = join_path(dir, "sweep.json");
    tat::atomic_write(path, report);
    write_resolved(cfg->cfg, dir, "sweep");
    json summary = {{"command", "sweep"}, {"report", path}, {"rows", json::parse(report)}};
    set_out(summary_json, summary.dump());
  });
}

tat_status tat_tokenizer_load(const char* path, tat_tokenizer** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    const std::string content = tat::read_file(path);
    if (looks_like_json(content)) {
      tat::MergedVocab merged = tat::merged_from_json(content);
      tat::Tokenizer tok = tat::make_tokenizer(merged);
      *out = new tat_tokenizer{std::move(merged), std::move(tok)};
    } else {
      *out = new tat_tokenizer{std::nullopt, tat::Tokenizer::from_vocab(tat::vocab_from_tsv(content))};
    }
  });
}

size_t tat_tokenizer_size(const tat_tokenizer* tok) { return tok ? tok->tokenizer.size() : 0; }

const char* tat_tokenizer_piece(const tat_tokenizer* tok, int32_t id) {
  if (tok == nullptr || id < 0 || static_cast<size_t>(id) >= tok->tokenizer.size()) return nullptr;
  return tok->tokenizer.token(id).piece.c_str();
}

tat_status tat_tokenizer_find(const tat_tokenizer* tok, const char* piece, int32_t* id) {
  return guarded([&] {
    require(tok != nullptr && piece != nullptr && id != nullptr, "null argument");
    const auto found = tok->tokenizer.find(piece);
    if (!found) tat::throw_error(tat::ErrorCode::kUnknownTokenId, std::string("no such token: ") + piece);
    *id = *found;
  });
}

void tat_tokenizer_free(tat_tokenizer* tok) { delete tok; }

void tat_encode_options_init(tat_encode_options* opts) {
  if (opts == nullptr) return;
  opts->mode = TAT_MODE_VITERBI;
  opts->alpha = 0.5;
  opts->seed = 0;
  opts->draw_index = 0;
  opts->unk_id = -1;
}

tat_status tat_encode(const tat_tokenizer* tok, const char* text, const tat_encode_options* opts,
                      tat_segmentation** out) {
  return guarded([&] {
    require(tok != nullptr && text != nullptr && out != nullptr, "null argument");
    *out = new tat_segmentation{tok->tokenizer.encode(text, to_options(opts))};
  });
}

tat_status tat_encode_batch(const tat_tokenizer* tok, const char* const* texts, size_t n,
                            const tat_encode_options* opts, tat_segmentation_list** out) {
  return guarded([&] {
    require(tok != nullptr && out != nullptr && (n == 0 || texts != nullptr), "null argument");
    const tat::EncodeOptions base = to_options(opts);
    auto list = std::make_unique<tat_segmentation_list>();
    list->items.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      require(texts[i] != nullptr, "null text in batch");
      tat::EncodeOptions o = base;
      o.draw_index = base.draw_index + i;
      list->items.push_back({tok->tokenizer.encode(texts[i], o)});
    }
    *out = list.release();
  });
}

tat_status tat_nbest(const tat_tokenizer* tok, const char* text, size_t n,
                     tat_segmentation_list** out) {
  return guarded([&] {
    require(tok != nullptr && text != nullptr && out != nullptr, "null argument");
    auto list = std::make_unique<tat_segmentation_list>();
    for (auto& s : tok->tokenizer.nbest(text, n)) list->items.push_back({std::move(s)});
    *out = list.release();
  });
}

size_t tat_segmentation_size(const tat_segmentation* seg) {
  return seg ? seg->seg.token_ids.size() : 0;
}

const int32_t* tat_segmentation_ids(const tat_segmentation* seg) {
  return seg ? seg->seg.token_ids.data() : nullptr;
}

const char* tat_segmentation_piece(const tat_segmentation* seg, size_t i) {
  if (seg == nullptr || i >= seg->seg.pieces.size()) return nullptr;
  return seg->seg.pieces[i].c_str();
}

double tat_segmentation_logprob(const tat_segmentation* seg) { return seg ? seg->seg.logprob : 0.0; }

void tat_segmentation_free(tat_segmentation* seg) { delete seg; }

size_t tat_segmentation_list_size(const tat_segmentation_list* list) {
  return list ? list->items.size() : 0;
}

const tat_segmentation* tat_segmentation_list_get(const tat_segmentation_list* list, size_t i) {
  if (list == nullptr || i >= list->items.size()) return nullptr;
  return &list->items[i];
}

void tat_segmentation_list_free(tat_segmentation_list* list) { delete list; }

tat_status tat_decode(const tat_tokenizer* tok, const int32_t* ids, size_t n, char** out) {
  return guarded([&] {
    require(tok != nullptr && out != nullptr && (n == 0 || ids != nullptr), "null argument");
    *out = dup_string(tok->tokenizer.decode(std::span<const int32_t>(ids, n)));
  });
}

tat_status tat_matrix_create(uint32_t rows, uint32_t dim, const float* data, tat_matrix** out) {
  return guarded([&] {
    const size_t count = static_cast<size_t>(rows) * dim;
    require(out != nullptr && (count == 0 || data != nullptr), "null argument");
    auto m = std::make_unique<tat_matrix>();
    m->m.rows = rows;
    m->m.dim = dim;
    m->m.data.assign(data, data + count);
    tat::check_matrix(m->m);
    *out = m.release();
  });
}

tat_status tat_matrix_load(const char* path, const char* format, tat_matrix** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    const auto fmt = tat::parse_matrix_format(format ? format : "binary");
    *out = new tat_matrix{tat::read_matrix(path, fmt)};
  });
}

tat_status tat_matrix_save(const tat_matrix* m, const char* path, const char* format) {
  return guarded([&] {
    require(m != nullptr && path != nullptr, "null argument");
    tat::write_matrix(m->m, path, tat::parse_matrix_format(format ? format : "binary"));
  });
}

uint32_t tat_matrix_rows(const tat_matrix* m) { return m ? m->m.rows : 0; }
uint32_t tat_matrix_dim(const tat_matrix* m) { return m ? m->m.dim : 0; }
const float* tat_matrix_data(const tat_matrix* m) { return m ? m->m.data.data() : nullptr; }
void tat_matrix_free(tat_matrix* m) { delete m; }

tat_status tat_plan_build(const tat_tokenizer* merged, tat_segment_fn segmenter, void* user,
                          tat_plan** out) {
  return guarded([&] {
    require(merged != nullptr && out != nullptr, "null argument");
    if (!merged->merged) {
      tat::throw_error(tat::ErrorCode::kInvalidArgument,
                       "mapping plans need a tokenizer loaded from a merged vocabulary");
    }
    tat::OriginalSegmenter seg;
    if (segmenter == nullptr) {
      seg = tat::greedy_segmenter(*merged->merged);
    } else {
      seg = [segmenter, user](std::string_view surface) {
        const std::string s(surface);
        std::vector<int32_t> ids(16);
        size_t n = 0;
        if (segmenter(user, s.c_str(), ids.data(), ids.size(), &n) != 0) {
          tat::throw_error(tat::ErrorCode::kSegmentationFailure,
                           "original tokenizer failed on '" + s + "'");
        }
        if (n > ids.size()) {
          ids.resize(n);
          if (segmenter(user, s.c_str(), ids.data(), ids.size(), &n) != 0 || n > ids.size()) {
            tat::throw_error(tat::ErrorCode::kSegmentationFailure,
                             "original tokenizer failed on '" + s + "'");
          }
        }
        ids.resize(n);
        return ids;
      };
    }
    *out = new tat_plan{tat::plan_mapping(*merged->merged, seg)};
  });
}

tat_status tat_plan_load(const char* path, tat_plan** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new tat_plan{tat::read_plan(path)};
  });
}

tat_status tat_plan_save(const tat_plan* plan, const char* path) {
  return guarded([&] {
    require(plan != nullptr && path != nullptr, "null argument");
    tat::write_plan(plan->plan, path);
  });
}

size_t tat_plan_size(const tat_plan* plan) { return plan ? plan->plan.items.size() : 0; }

void tat_plan_free(tat_plan* plan) { delete plan; }

tat_status tat_matrix_extend(const tat_matrix* orig, const tat_plan* plan, size_t merged_size,
                             tat_matrix** out) {
  return guarded([&] {
    require(orig != nullptr && plan != nullptr && out != nullptr, "null argument");
    *out = new tat_matrix{tat::extend_matrix(orig->m, plan->plan, merged_size)};
  });
}

tat_status tat_stats_efficiency(const tat_tokenizer* tok, const char* const* texts, size_t n,
                                const tat_encode_options* opts, const char* length_unit,
                                char** out_json) {
  return guarded([&] {
    require(tok != nullptr && out_json != nullptr && (n == 0 || texts != nullptr), "null argument");
    std::vector<std::string> copy;
    copy.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      require(texts[i] != nullptr, "null text");
      copy.emplace_back(texts[i]);
    }
    const auto unit = tat::parse_length_unit(length_unit ? length_unit : "char");
    *out_json = dup_string(
        tat::efficiency_to_json(tat::efficiency(copy, tok->tokenizer, to_options(opts), unit)));
  });
}

tat_status tat_stats_constitution(const tat_tokenizer* merged, const int32_t* ids,
                                  const size_t* lengths, size_t n_seqs, char** out_json) {
  return guarded([&] {
    require(merged != nullptr && out_json != nullptr && (n_seqs == 0 || lengths != nullptr),
            "null argument");
    if (!merged->merged) {
      tat::throw_error(tat::ErrorCode::kInvalidArgument,
                       "constitution needs a tokenizer loaded from a merged vocabulary");
    }
    std::vector<std::vector<int32_t>> seqs(n_seqs);
    size_t offset = 0;
    for (size_t i = 0; i < n_seqs; ++i) {
      require(lengths[i] == 0 || ids != nullptr, "null ids");
      seqs[i].assign(ids + offset, ids + offset + lengths[i]);
      offset += lengths[i];
    }
    *out_json = dup_string(tat::constitution_to_json(tat::constitution(seqs, *merged->merged)));
  });
}

tat_status tat_stats_length_buckets(const tat_tokenizer* tok, size_t k, char** out_json) {
  return guarded([&] {
    require(tok != nullptr && out_json != nullptr, "null argument");
    std::vector<std::pair<std::string, double>> tokens;
    for (size_t i = 0; i < tok->tokenizer.size(); ++i) {
      const auto& t = tok->tokenizer.token(static_cast<int32_t>(i));
      if (!t.never_sample) tokens.emplace_back(t.piece, t.score);
    }
    const auto buckets = tat::default_buckets();
    const auto rows = tat::length_bucket_table(tokens, buckets, k);
    *out_json = dup_string(tat::buckets_to_json(rows));
  });
}

}  // extern "C"
