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

#ifndef TAT_LATTICE_H_
#define TAT_LATTICE_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tat/trie.h"

namespace tat {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// A vocabulary match s[start, end) in character positions.
struct LatticeEdge {
  uint32_t start = 0;
  uint32_t end = 0;
  int32_t token_id = -1;
  double score = 0.0;
};

// Segmentation DAG of one normalized string. Nodes are the character
// boundaries 0..size(); every path from 0 to size() is a segmentation.
class Lattice {
 public:
  Lattice() = default;

  std::string_view text() const { return text_; }
  size_t size() const { return offsets_.size() - 1; }  // characters
  const std::vector<LatticeEdge>& edges() const { return edges_; }
  // Indices into edges(), ordered by start position.
  const std::vector<uint32_t>& ending_at(size_t pos) const { return ending_at_[pos]; }
  const std::vector<uint32_t>& starting_at(size_t pos) const { return starting_at_[pos]; }
  std::string_view surface(const LatticeEdge& e) const {
    return std::string_view(text_).substr(offsets_[e.start], offsets_[e.end] - offsets_[e.start]);
  }
  // True when size() is reachable from 0.
  bool connected() const;

 private:
  friend Lattice build_lattice(std::string_view, const Trie&, std::span<const double>);

  std::string text_;
  std::vector<size_t> offsets_{0};
  std::vector<LatticeEdge> edges_;
  std::vector<std::vector<uint32_t>> ending_at_{{}};
  std::vector<std::vector<uint32_t>> starting_at_{{}};
};

// Adds an edge for every trie key matching at every character position;
// scores[id] becomes the edge score. Throws kCoverage when some character
// is not spanned by any edge.
Lattice build_lattice(std::string_view text, const Trie& trie, std::span<const double> scores);

struct Segmentation {
  std::vector<int32_t> token_ids;
  std::vector<std::string> pieces;
  double logprob = 0.0;  // edge scores summed left to right

  bool operator==(const Segmentation&) const = default;
};

struct SamplerConfig {
  double alpha = 0.5;  // regularization coefficient
  uint64_t seed = 0;
};

// Maximum-logprob path. Ties go to fewer tokens, then to the
// lexicographically smaller piece sequence. Throws kDisconnectedLattice.
Segmentation viterbi(const Lattice& lattice);

// Top-n distinct paths under the viterbi ordering.
std::vector<Segmentation> nbest(const Lattice& lattice, size_t n);

// log of the summed path probability (forward log-sum-exp).
double marginal_loglik(const Lattice& lattice);

// Forward log-weights with every edge score multiplied by `scale`;
// result[j] is the log total weight of partial paths ending at j.
std::vector<double> forward_log_weights(const Lattice& lattice, double scale = 1.0);
std::vector<double> backward_log_weights(const Lattice& lattice, double scale = 1.0);

// Posterior probability of every edge (same order as edges()). Writes the
// marginal log-likelihood to *loglik when non-null.
std::vector<double> edge_posteriors(const Lattice& lattice, double* loglik = nullptr);

// Draws a path with probability proportional to exp(alpha * logprob) by
// forward filtering and backward sampling. The draw is a pure function of
// (lattice, cfg.seed, draw_index).
Segmentation sample(const Lattice& lattice, const SamplerConfig& cfg, uint64_t draw_index);

// Builds a Segmentation from a left-to-right edge sequence.
Segmentation segmentation_from_edges(const Lattice& lattice, std::span<const uint32_t> edge_ids);

}  // namespace tat

#endif  // TAT_LATTICE_H_
