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

#ifndef TAT_UNIGRAM_TRAINER_H_
#define TAT_UNIGRAM_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tat/corpus.h"
#include "tat/scored_vocab.h"
#include "tat/seed_vocab.h"

namespace tat {

struct TrainConfig {
  size_t target_size = 10000;
  size_t em_iters_per_round = 2;
  double shrink_factor = 0.75;
  uint64_t seed = 0;  // reserved; EM is deterministic
  size_t threads = 1;
};

struct EmStepResult {
  ScoredVocab vocab;
  double loglik = 0.0;  // corpus log-likelihood before the update
};

// Expected counts are floored here before the M-step so that pieces no path
// uses keep a finite score; pruning, not EM, decides what leaves the
// vocabulary.
inline constexpr double kMinExpectedCount = 1e-9;

// One EM iteration: expected token counts from lattice forward-backward,
// then score_i = log(count_i / sum(counts)). An empty corpus returns the vocabulary unchanged with
// loglik 0. Throws kCoverage when a sentence has no segmentation.
EmStepResult em_step(const ScoredVocab& vocab, const CorpusHandle& corpus, size_t threads = 1);

// sum over sentences of log sum_{segmentations} P(segmentation).
double corpus_loglik(const ScoredVocab& vocab, const CorpusHandle& corpus, size_t threads = 1);

inline constexpr double kUnremovableLoss = std::numeric_limits<double>::infinity();

struct TokenLoss {
  std::string token;
  double loss = 0.0;
};

// Exact likelihood drop L(V) - L(V \ {t}) for every token, in vocabulary
// order. After removing t the remaining probabilities are divided by
// (1 - p_t). Single characters get kUnremovableLoss.
std::vector<TokenLoss> token_losses(const ScoredVocab& vocab, const CorpusHandle& corpus,
                                    size_t threads = 1);

// Seed pieces scored by log relative frequency.
ScoredVocab initial_vocab(const SeedVocab& seed, std::string_view marker);

struct TrainRound {
  size_t index = 0;
  std::vector<double> logliks;  // before each EM step
  double final_loglik = 0.0;    // after the last EM step
  size_t size_before = 0;
  size_t size_after = 0;
};

struct TrainResult {
  ScoredVocab vocab;
  std::vector<TrainRound> rounds;
  std::vector<std::string> warnings;
};

// Alternates EM rounds with loss-based pruning, always keeping the single
// characters, until the vocabulary has target_size entries; the final entry
// order is descending score, ties by token.
TrainResult train(const SeedVocab& seed, const CorpusHandle& corpus, const TrainConfig& cfg);

}  // namespace tat

#endif  // TAT_UNIGRAM_TRAINER_H_
