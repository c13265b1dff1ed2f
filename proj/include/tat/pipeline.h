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

#ifndef TAT_PIPELINE_H_
#define TAT_PIPELINE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "tat/embed_mapper.h"
#include "tat/metrics.h"
#include "tat/pipeline_config.h"
#include "tat/unigram_trainer.h"
#include "tat/vocab_merge.h"

namespace tat {

// Non-empty lines of a UTF-8 text file.
std::vector<std::string> read_text_lines(const std::string& path);

// corpus -> seed vocabulary -> unigram training for `target_size`.
TrainResult run_train(const PipelineConfig& cfg, size_t target_size);
std::string train_log_json(const TrainResult& result, size_t target_size);

OriginalVocab load_original(const PipelineConfig& cfg);
MergedVocab run_merge(const PipelineConfig& cfg, const ScoredVocab& task,
                      std::vector<std::string>* log = nullptr);

struct MapEmbedResult {
  MappingPlan plan;
  EmbeddingMatrix matrix;
};
MapEmbedResult run_map_embed(const MergedVocab& merged, const EmbeddingMatrix& orig,
                             const OriginalSegmenter& segmenter);

struct SweepRow {
  size_t target_size = 0;
  size_t task_size = 0;
  size_t merged_size = 0;
  size_t increment = 0;  // tokens added on top of the original vocabulary
  EfficiencyReport efficiency;
};

// Trains and merges once per train.sizes entry and measures viterbi
// efficiency of each merged vocabulary on the training corpus.
std::vector<SweepRow> run_sweep(const PipelineConfig& cfg);
std::string sweep_to_json(const std::vector<SweepRow>& rows, size_t original_size);

}  // namespace tat

#endif  // TAT_PIPELINE_H_
