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

#ifndef TAT_TESTS_TESTING_ORACLES_H_
#define TAT_TESTS_TESTING_ORACLES_H_

// Reference implementations used to check the library. These are written
// for obviousness, not speed: segmentations are enumerated explicitly.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tat/scored_vocab.h"
#include "tat/trie.h"

namespace tat::testing {

struct Path {
  std::vector<int32_t> ids;
  std::vector<std::string> pieces;
  double logprob = 0.0;
};

// Every way of writing `text` as a concatenation of tokens.
std::vector<Path> enumerate_paths(std::string_view text, std::span<const std::string> tokens,
                                  std::span<const double> scores);

double log_sum_exp(std::span<const double> xs);
double path_loglik(std::span<const Path> paths);  // log sum exp(logprob)

// Highest logprob; ties to fewer tokens, then smaller piece sequence.
const Path& best_path(std::span<const Path> paths);

// Orders paths best first under the same rule.
std::vector<Path> sorted_paths(std::vector<Path> paths);

// A small random segmentation problem. `text` is built by concatenating
// tokens, so at least one path exists.
struct Instance {
  std::vector<std::string> tokens;
  std::vector<double> scores;
  std::string text;
  Trie trie;
};

Instance random_instance(std::mt19937_64& rng, size_t max_tokens = 8, size_t max_charset = 4,
                         size_t max_chars = 10);

// Unigram model quantities by enumeration.
double brute_sentence_loglik(const ScoredVocab& vocab, std::string_view sentence);
double brute_corpus_loglik(const ScoredVocab& vocab, std::span<const std::string> sentences);
// L(V) - L(V \ {token}) with the remaining probabilities renormalized.
double brute_loss(const ScoredVocab& vocab, std::span<const std::string> sentences,
                  std::string_view token);

ScoredVocab make_vocab(std::initializer_list<std::pair<std::string, double>> entries);

// Deterministic helpers on top of mt19937_64, whose output sequence is
// fixed by the standard (the distribution classes are not).
inline size_t uniform_index(std::mt19937_64& rng, size_t n) { return rng() % n; }
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace tat::testing

#endif  // TAT_TESTS_TESTING_ORACLES_H_
