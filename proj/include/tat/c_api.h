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

/*
 * C interface to the tokenizer toolkit. All objects are opaque handles that
 * the caller releases with the matching *_free function. Functions return a
 * tat_status; on failure tat_last_error_message() describes the problem for
 * the calling thread. Strings returned through char** are NUL-terminated,
 * heap allocated and released with tat_string_free().
 */
#ifndef TAT_C_API_H_
#define TAT_C_API_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TAT_API __declspec(dllexport)
#elif defined(TAT_BUILDING_LIBRARY)
#define TAT_API __attribute__((visibility("default")))
#else
#define TAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  TAT_OK = 0,
  TAT_ERR_IO = 1,
  TAT_ERR_ENCODING = 2,
  TAT_ERR_MARKER_COLLISION = 3,
  TAT_ERR_CONFIG = 4,
  TAT_ERR_COVERAGE = 5,
  TAT_ERR_DISCONNECTED_LATTICE = 6,
  TAT_ERR_UNKNOWN_TOKEN_ID = 7,
  TAT_ERR_ZERO_LENGTH = 8,
  TAT_ERR_DUPLICATE_TOKEN = 9,
  TAT_ERR_SEGMENTATION_FAILURE = 10,
  TAT_ERR_DIMENSION_MISMATCH = 11,
  TAT_ERR_PLAN_GAP = 12,
  TAT_ERR_EMPTY_INPUT = 13,
  TAT_ERR_VALIDATION = 14,
  TAT_ERR_FORMAT = 15,
  TAT_ERR_INVALID_ARGUMENT = 16,
  TAT_ERR_INTERNAL = 100
} tat_status;

typedef struct tat_config tat_config;
typedef struct tat_tokenizer tat_tokenizer;
typedef struct tat_segmentation tat_segmentation;
typedef struct tat_segmentation_list tat_segmentation_list;
typedef struct tat_matrix tat_matrix;
typedef struct tat_plan tat_plan;

TAT_API const char* tat_version(void);
/* Stable class name such as "CoverageError" for a status. */
TAT_API const char* tat_status_name(tat_status status);
TAT_API const char* tat_last_error_message(void);
TAT_API void tat_string_free(char* s);

/* Configuration. Keys are dotted paths, e.g. "train.target_size". */
TAT_API tat_status tat_config_new(tat_config** out);
TAT_API tat_status tat_config_load(const char* path, tat_config** out);
TAT_API tat_status tat_config_parse(const char* yaml, tat_config** out);
TAT_API tat_status tat_config_set(tat_config* cfg, const char* key, const char* value);
TAT_API tat_status tat_config_get(const tat_config* cfg, const char* key, char** out);
TAT_API tat_status tat_config_validate(tat_config* cfg);
TAT_API tat_status tat_config_to_yaml(const tat_config* cfg, char** out);
TAT_API void tat_config_free(tat_config* cfg);

/*
 * Pipeline stages. Each writes its outputs under output_dir (NULL keeps the
 * configured one) and returns a JSON summary through summary_json, which
 * may be NULL.
 *   train:     vocab.tsv, train_log.json
 *   merge:     merged.json (task vocabulary read from task_vocab_path)
 *   map_embed: plan.json, embeddings.tate
 *   sweep:     sweep.json
 * plus <stage>.resolved.yaml (train, merge, map-embed, sweep) holding the
 * configuration the stage ran with.
 */
TAT_API tat_status tat_train(tat_config* cfg, const char* output_dir, char** summary_json);
TAT_API tat_status tat_merge(tat_config* cfg, const char* task_vocab_path, const char* output_dir,
                             char** summary_json);
TAT_API tat_status tat_map_embed(tat_config* cfg, const char* merged_path, const char* output_dir,
                                 char** summary_json);
TAT_API tat_status tat_sweep(tat_config* cfg, const char* output_dir, char** summary_json);

/* Tokenizers load from a merged vocabulary JSON or a scored TSV vocabulary. */
TAT_API tat_status tat_tokenizer_load(const char* path, tat_tokenizer** out);
TAT_API size_t tat_tokenizer_size(const tat_tokenizer* tok);
/* Borrowed pointer, valid while tok lives. NULL for an unknown id. */
TAT_API const char* tat_tokenizer_piece(const tat_tokenizer* tok, int32_t id);
TAT_API tat_status tat_tokenizer_find(const tat_tokenizer* tok, const char* piece, int32_t* id);
TAT_API void tat_tokenizer_free(tat_tokenizer* tok);

typedef enum { TAT_MODE_VITERBI = 0, TAT_MODE_SAMPLE = 1 } tat_encode_mode;

typedef struct {
  tat_encode_mode mode;
  double alpha;
  uint64_t seed;
  uint64_t draw_index;
  int32_t unk_id; /* negative: uncovered characters are an error */
} tat_encode_options;

TAT_API void tat_encode_options_init(tat_encode_options* opts);

TAT_API tat_status tat_encode(const tat_tokenizer* tok, const char* text,
                              const tat_encode_options* opts, tat_segmentation** out);
/* Text i is encoded with draw index opts->draw_index + i. */
TAT_API tat_status tat_encode_batch(const tat_tokenizer* tok, const char* const* texts, size_t n,
                                    const tat_encode_options* opts, tat_segmentation_list** out);
TAT_API tat_status tat_nbest(const tat_tokenizer* tok, const char* text, size_t n,
                             tat_segmentation_list** out);

TAT_API size_t tat_segmentation_size(const tat_segmentation* seg);
TAT_API const int32_t* tat_segmentation_ids(const tat_segmentation* seg);
TAT_API const char* tat_segmentation_piece(const tat_segmentation* seg, size_t i);
TAT_API double tat_segmentation_logprob(const tat_segmentation* seg);
TAT_API void tat_segmentation_free(tat_segmentation* seg);

TAT_API size_t tat_segmentation_list_size(const tat_segmentation_list* list);
/* Borrowed, owned by the list. */
TAT_API const tat_segmentation* tat_segmentation_list_get(const tat_segmentation_list* list,
                                                          size_t i);
TAT_API void tat_segmentation_list_free(tat_segmentation_list* list);

TAT_API tat_status tat_decode(const tat_tokenizer* tok, const int32_t* ids, size_t n, char** out);

/* Embedding matrices; format is "binary" or "text". */
TAT_API tat_status tat_matrix_create(uint32_t rows, uint32_t dim, const float* data,
                                     tat_matrix** out);
TAT_API tat_status tat_matrix_load(const char* path, const char* format, tat_matrix** out);
TAT_API tat_status tat_matrix_save(const tat_matrix* m, const char* path, const char* format);
TAT_API uint32_t tat_matrix_rows(const tat_matrix* m);
TAT_API uint32_t tat_matrix_dim(const tat_matrix* m);
TAT_API const float* tat_matrix_data(const tat_matrix* m);
TAT_API void tat_matrix_free(tat_matrix* m);

/*
 * Segments `surface` with the original tokenizer, writing at most `cap` ids
 * to `ids` and the full count to `n`. Returns nonzero on failure.
 */
typedef int (*tat_segment_fn)(void* user, const char* surface, int32_t* ids, size_t cap,
                              size_t* n);

/* Mapping plans need a tokenizer loaded from a merged vocabulary. A NULL
 * segmenter uses greedy longest match over the original tokens. */
TAT_API tat_status tat_plan_build(const tat_tokenizer* merged, tat_segment_fn segmenter,
                                  void* user, tat_plan** out);
TAT_API tat_status tat_plan_load(const char* path, tat_plan** out);
TAT_API tat_status tat_plan_save(const tat_plan* plan, const char* path);
TAT_API size_t tat_plan_size(const tat_plan* plan);
TAT_API void tat_plan_free(tat_plan* plan);
TAT_API tat_status tat_matrix_extend(const tat_matrix* orig, const tat_plan* plan,
                                     size_t merged_size, tat_matrix** out);

/* Metrics, returned as JSON documents. */
TAT_API tat_status tat_stats_efficiency(const tat_tokenizer* tok, const char* const* texts,
                                        size_t n, const tat_encode_options* opts,
                                        const char* length_unit, char** out_json);
/* ids holds `n_seqs` sequences back to back; lengths[i] is the size of the
 * i-th. */
TAT_API tat_status tat_stats_constitution(const tat_tokenizer* merged, const int32_t* ids,
                                          const size_t* lengths, size_t n_seqs, char** out_json);
TAT_API tat_status tat_stats_length_buckets(const tat_tokenizer* tok, size_t k, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TAT_C_API_H_ */
