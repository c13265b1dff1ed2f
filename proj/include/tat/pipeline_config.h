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

#ifndef TAT_PIPELINE_CONFIG_H_
#define TAT_PIPELINE_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tat/corpus.h"
#include "tat/embed_mapper.h"
#include "tat/lattice.h"
#include "tat/seed_vocab.h"
#include "tat/unigram_trainer.h"
#include "tat/vocab_merge.h"

namespace tat {

// Multiplier for the default seed vocabulary size (seed_size = k * N).
inline constexpr size_t kAutoSeedFactor = 5;

// Everything needed to reproduce a run end to end. Field paths used by
// set_field() and in validation messages are the YAML keys, e.g.
// "train.target_size" or "original.special_tokens".
struct PipelineConfig {
  struct Corpus {
    std::string path;
    LengthUnit length_unit = LengthUnit::kCharacter;
    std::string marker{kDefaultMarker};
  } corpus;

  struct Seed {
    size_t max_piece_len = kDefaultMaxPieceLength;
    std::optional<size_t> seed_size;  // kAutoSeedFactor * target_size when unset
  } seed_vocab;

  TrainConfig train;
  std::vector<size_t> sweep_sizes;  // train.sizes

  double alpha = 0.5;

  MergeConfig merge;

  struct Original {
    std::string path;
    OriginalFormat format = OriginalFormat::kList;
    std::optional<Convention> convention;
    std::vector<std::string> special_tokens;
    bool detect_specials = true;
  } original;

  struct Embedding {
    std::string path;
    MatrixFormat format = MatrixFormat::kBinary;
  } embedding;

  std::string output_dir = "tat_out";
  uint64_t seed = 0;
  size_t threads = 1;

  size_t seed_size_for(size_t target) const {
    return seed_vocab.seed_size.value_or(kAutoSeedFactor * target);
  }
  ImportOptions import_options() const;
  SamplerConfig sampler() const { return {alpha, seed}; }
};

PipelineConfig parse_config(std::string_view yaml);
PipelineConfig load_config(const std::string& path);

// Sets one field from its textual form; lists are comma separated. Throws
// kValidation naming the field on bad input or an unknown key.
void set_field(PipelineConfig* cfg, std::string_view key, std::string_view value);
// Textual form of a scalar field as it appears in config_to_yaml(); lists
// come back comma separated. Throws kValidation for an unknown key.
std::string get_field(const PipelineConfig& cfg, std::string_view key);

// Returns "<field path>: <problem>" for every violated constraint.
std::vector<std::string> validation_errors(const PipelineConfig& cfg);
// Applies TAT_SEED from the environment, then throws kValidation listing
// every error, if any.
void validate(PipelineConfig* cfg);

std::string config_to_yaml(const PipelineConfig& cfg);

}  // namespace tat

#endif  // TAT_PIPELINE_CONFIG_H_
