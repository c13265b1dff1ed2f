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

#include "tat/unigram_trainer.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <unordered_map>

#include "parallel.h"
#include "tat/error.h"
#include "tat/lattice.h"
#include "tat/trie.h"
#include "tat/utf8.h"

namespace tat {
namespace {

// Sentences deduplicated with multiplicities, in first-occurrence order.
struct WeightedSentence {
  std::string_view text;
  double weight;
};

std::vector<WeightedSentence> dedupe(const CorpusHandle& corpus) {
  std::vector<WeightedSentence> out;
  std::unordered_map<std::string_view, size_t> index;
  for (const auto& s : corpus.sentences) {
    auto [it, inserted] = index.try_emplace(s.text, out.size());
    if (inserted) {
      out.push_back({s.text, 1.0});
    } else {
      out[it->second].weight += 1.0;
    }
  }
  return out;
}

struct VocabIndex {
  Trie trie;
  std::vector<double> scores;
};

VocabIndex index_vocab(const ScoredVocab& vocab) {
  VocabIndex idx;
  idx.scores.reserve(vocab.size());
  for (size_t i = 0; i < vocab.size(); ++i) {
    if (!idx.trie.insert(vocab.entries[i].token, static_cast<int32_t>(i))) {
      throw_error(ErrorCode::kDuplicateToken, "duplicate token '" + vocab.entries[i].token + "'");
    }
    idx.scores.push_back(vocab.entries[i].score);
  }
  return idx;
}

Lattice training_lattice(std::string_view text, const VocabIndex& idx) {
  Lattice lat = build_lattice(text, idx.trie, idx.scores);
  if (!lat.connected()) {
    throw_error(ErrorCode::kCoverage, "no segmentation for '" + std::string(text) + "'");
  }
  return lat;
}

constexpr size_t kChunk = 32;

// Chunked E-step. Chunk boundaries are fixed, and partial sums are reduced in
// chunk order, so the result is bit-identical for any thread count.
double expected_counts(const std::vector<WeightedSentence>& sentences, const VocabIndex& idx,
                       size_t threads, std::vector<double>* counts) {
  const size_t n_chunks = (sentences.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(n_chunks);
  std::vector<double> partial_ll(n_chunks, 0.0);
  internal::parallel_for(n_chunks, threads, [&](size_t c) {
    auto& acc = partial[c];
    if (counts != nullptr) acc.assign(idx.scores.size(), 0.0);
    const size_t end = std::min(sentences.size(), (c + 1) * kChunk);
    for (size_t s = c * kChunk; s < end; ++s) {
      const Lattice lat = training_lattice(sentences[s].text, idx);
      double z = 0.0;
      if (counts == nullptr) {
        z = forward_log_weights(lat).back();
      } else {
        const auto post = edge_posteriors(lat, &z);
        for (size_t e = 0; e < post.size(); ++e) {
          acc[static_cast<size_t>(lat.edges()[e].token_id)] += sentences[s].weight * post[e];
        }
      }
      partial_ll[c] += sentences[s].weight * z;
    }
  });
  double ll = 0.0;
  if (counts != nullptr) counts->assign(idx.scores.size(), 0.0);
  for (size_t c = 0; c < n_chunks; ++c) {
    ll += partial_ll[c];
    if (counts != nullptr) {
      for (size_t i = 0; i < partial[c].size(); ++i) (*counts)[i] += partial[c][i];
    }
  }
  return ll;
}

// Exact pruning loss. For a removed token t with probability p, every
// remaining score is renormalized by 1/(1-p), so a path with k tokens gains
// a factor c^k, c = 1/(1-p). Sentences whose lattice lacks t keep their
// paths and change by log E[c^K] under the path-length distribution; the
// others need the partition function without t's edges.
//
// Sentences are processed one at a time against every token, which keeps
// one lattice in cache. The passes run in linear space: each edge weight is
// multiplied by exp(lambda * chars), scaling every complete path by the
// same exp(lambda * n); lambda = -log_z / n puts the scaled partition
// function near 1. Sentences whose scaled values leave double range use
// the log-space routines instead.

// Log-space fallbacks.
std::vector<double> log_length_distribution(const Lattice& lat, double log_z) {
  const size_t n = lat.size();
  // w[pos][k]: log weight of partial paths ending at pos using k tokens.
  std::vector<std::vector<double>> w(n + 1, std::vector<double>(n + 1, kNegInf));
  w[0][0] = 0.0;
  for (size_t pos = 1; pos <= n; ++pos) {
    for (uint32_t id : lat.ending_at(pos)) {
      const auto& e = lat.edges()[id];
      const auto& from = w[e.start];
      auto& to = w[pos];
      for (size_t k = 0; k < pos; ++k) {
        if (from[k] != kNegInf) to[k + 1] = log_add(to[k + 1], from[k] + e.score);
      }
    }
  }
  std::vector<double> q(n + 1);
  for (size_t k = 0; k <= n; ++k) q[k] = std::exp(w[n][k] - log_z);
  return q;
}

double log_loglik_without(const Lattice& lat, int32_t removed, double shift) {
  std::vector<double> fwd(lat.size() + 1, kNegInf);
  fwd[0] = 0.0;
  for (size_t pos = 1; pos <= lat.size(); ++pos) {
    double acc = kNegInf;
    for (uint32_t id : lat.ending_at(pos)) {
      const auto& e = lat.edges()[id];
      if (e.token_id == removed) continue;
      acc = log_add(acc, fwd[e.start] + e.score + shift);
    }
    fwd[pos] = acc;
  }
  return fwd.back();
}

// sum_k a[k] c^k via Horner.
double poly_at(const double* a, size_t len, double c) {
  double acc = 0.0;
  for (size_t k = len; k-- > 0;) acc = acc * c + a[k];
  return acc;
}

// Path-length tail mass that may be ignored when summing q[k] c^k, relative
// to the total. Dropping it changes the result by less than this bound
// times c^n.
constexpr double kTailTolerance = 1e-18;

class SentenceLoss {
 public:
  SentenceLoss(const Lattice& lat, double log_z) : lat_(lat), n_(lat.size()), log_z_(log_z) {
    const double lambda = n_ == 0 ? 0.0 : -log_z / static_cast<double>(n_);
    log_scale_ = lambda * static_cast<double>(n_);
    // Edges in end order, as flat arrays.
    end_offset_.assign(n_ + 2, 0);
    for (size_t pos = 1; pos <= n_; ++pos) {
      end_offset_[pos] = start_.size();
      for (uint32_t id : lat.ending_at(pos)) {
        const auto& e = lat.edges()[id];
        start_.push_back(e.start);
        token_.push_back(e.token_id);
        weight_.push_back(std::exp(e.score + lambda * static_cast<double>(e.end - e.start)));
      }
    }
    end_offset_[n_ + 1] = start_.size();
    linear_ok_ = build_length_tables();
    if (!linear_ok_) {
      q_ = log_length_distribution(lat, log_z);
      total_ = 1.0;
    }
    set_window();
  }

  bool linear_ok() const { return linear_ok_; }

  // log E[c^K] for every c, written to out.
  void log_moments(std::span<const double> c, std::span<const double> log_c, double* out) const {
    const size_t len = khi_ + 1 - klo_;
    std::vector<double> acc(c.size(), 0.0);
    const double* q = q_.data() + klo_;
    for (size_t k = len; k-- > 0;) {
      const double qk = q[k];
      for (size_t t = 0; t < c.size(); ++t) acc[t] = acc[t] * c[t] + qk;
    }
    const double kl = static_cast<double>(klo_);
    const double nn = static_cast<double>(n_);
    for (size_t t = 0; t < c.size(); ++t) {
      if (tail_ > 0.0 && tail_ * std::exp(nn * log_c[t]) > kTailTolerance) {
        out[t] = std::log(poly_at(q_.data(), q_.size(), c[t]));
      } else {
        out[t] = std::log(acc[t]) + kl * log_c[t];
      }
    }
  }

  // Log partition function with every edge of `token` dropped and the rest
  // multiplied by c. `edges` are that token's edge ids in the lattice and
  // `log_moment` is log E[c^K].
  double loglik_without(int32_t token, std::span<const uint32_t> edges, double c, double log_moment,
                        std::vector<double>* scratch) const {
    if (!linear_ok_) return log_loglik_without(lat_, token, std::log(c));
    if (edges.size() == 1) {
      // Paths using the edge (a, b): F_c(a) * w * c * B_c(b).
      const auto& e = lat_.edges()[edges[0]];
      const double w = std::exp(e.score + (-log_z_ / static_cast<double>(n_)) *
                                              static_cast<double>(e.end - e.start));
      const double used = poly_at(&fwd_[row(e.start)], e.start + 1, c) * w * c *
                          poly_at(&bwd_[row(e.end)], n_ - e.end + 1, c) / total_;
      const double all = std::exp(log_moment);
      const double rest = all - used;
      // Past this ratio the subtraction loses too many digits.
      if (rest > 1e-3 * all) return std::log(rest) + std::log(total_) + log_z_;
    }
    std::vector<double>& fwd = *scratch;
    fwd.assign(n_ + 1, 0.0);
    fwd[0] = 1.0;
    for (size_t pos = 1; pos <= n_; ++pos) {
      double acc = 0.0;
      for (size_t i = end_offset_[pos]; i < end_offset_[pos + 1]; ++i) {
        if (token_[i] != token) acc += fwd[start_[i]] * weight_[i];
      }
      fwd[pos] = acc * c;
    }
    const double z = fwd[n_];
    if (std::isfinite(z) && z > 1e-280) return std::log(z) - log_scale_;
    return log_loglik_without(lat_, token, std::log(c));
  }

 private:
  size_t row(size_t pos) const { return pos * (n_ + 1); }

  // fwd_[row(pos) + k]: scaled weight of paths 0 -> pos with k tokens;
  // bwd_[row(pos) + k]: paths pos -> n with k tokens.
  bool build_length_tables() {
    const size_t stride = n_ + 1;
    fwd_.assign(stride * stride, 0.0);
    bwd_.assign(stride * stride, 0.0);
    fwd_[0] = 1.0;
    for (size_t pos = 1; pos <= n_; ++pos) {
      double* to = &fwd_[row(pos)];
      for (size_t i = end_offset_[pos]; i < end_offset_[pos + 1]; ++i) {
        const double* from = &fwd_[row(start_[i])];
        const double x = weight_[i];
        for (size_t k = 0; k <= start_[i]; ++k) to[k + 1] += from[k] * x;
      }
    }
    bwd_[row(n_)] = 1.0;
    for (size_t pos = n_; pos-- > 0;) {
      double* to = &bwd_[row(pos)];
      for (uint32_t id : lat_.starting_at(pos)) {
        const auto& e = lat_.edges()[id];
        const double* from = &bwd_[row(e.end)];
        const double x = std::exp(e.score + (-log_z_ / static_cast<double>(n_)) *
                                                static_cast<double>(e.end - e.start));
        for (size_t k = 0; k + e.end <= n_; ++k) to[k + 1] += from[k] * x;
      }
    }
    q_.assign(fwd_.begin() + static_cast<std::ptrdiff_t>(row(n_)), fwd_.end());
    total_ = 0.0;
    for (double v : q_) total_ += v;
    if (!(std::isfinite(total_) && total_ > 0.0)) return false;
    for (double& v : q_) v /= total_;
    for (double v : fwd_) {
      if (!std::isfinite(v)) return false;
    }
    for (double v : bwd_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  // Trims q to the range holding all but a negligible share of the mass.
  void set_window() {
    klo_ = 0;
    khi_ = q_.size() - 1;
    double qmax = 0.0;
    for (double v : q_) qmax = std::max(qmax, v);
    const double cut = qmax * 1e-30;
    while (klo_ < khi_ && q_[klo_] < cut) ++klo_;
    while (khi_ > klo_ && q_[khi_] < cut) --khi_;
    tail_ = 0.0;
    for (size_t k = 0; k < q_.size(); ++k) {
      if (k < klo_ || k > khi_) tail_ += q_[k];
    }
  }

  const Lattice& lat_;
  size_t n_;
  double log_z_;
  double log_scale_ = 0.0;
  bool linear_ok_ = false;
  std::vector<size_t> end_offset_;
  std::vector<uint32_t> start_;
  std::vector<int32_t> token_;
  std::vector<double> weight_;
  std::vector<double> fwd_, bwd_;
  std::vector<double> q_;  // path-length distribution
  double total_ = 1.0;     // scaled partition function
  size_t klo_ = 0, khi_ = 0;
  double tail_ = 0.0;
};

}  // namespace

EmStepResult em_step(const ScoredVocab& vocab, const CorpusHandle& corpus, size_t threads) {
  if (corpus.sentences.empty()) return {vocab, 0.0};
  const auto sentences = dedupe(corpus);
  const VocabIndex idx = index_vocab(vocab);
  std::vector<double> counts;
  const double ll = expected_counts(sentences, idx, threads, &counts);

  double total = 0.0;
  for (double& c : counts) {
    c = std::max(c, kMinExpectedCount);
    total += c;
  }
  const double log_total = std::log(total);
  EmStepResult result;
  result.loglik = ll;
  result.vocab.marker = vocab.marker;
  result.vocab.entries.reserve(vocab.size());
  for (size_t i = 0; i < vocab.size(); ++i) {
    result.vocab.entries.push_back({vocab.entries[i].token, std::log(counts[i]) - log_total});
  }
  return result;
}

double corpus_loglik(const ScoredVocab& vocab, const CorpusHandle& corpus, size_t threads) {
  if (corpus.sentences.empty()) return 0.0;
  const auto sentences = dedupe(corpus);
  const VocabIndex idx = index_vocab(vocab);
  return expected_counts(sentences, idx, threads, nullptr);
}

std::vector<TokenLoss> token_losses(const ScoredVocab& vocab, const CorpusHandle& corpus,
                                    size_t threads) {
  const VocabIndex idx = index_vocab(vocab);
  const auto sentences = dedupe(corpus);
  const size_t v = vocab.size();

  std::vector<TokenLoss> out(v);
  // Removable tokens, with their renormalizing factor c = 1/(1-p).
  std::vector<int32_t> removable;
  std::vector<double> c, log_c;
  std::vector<int32_t> slot(v, -1);
  for (size_t t = 0; t < v; ++t) {
    out[t].token = vocab.entries[t].token;
    const double p = std::exp(vocab.entries[t].score);
    if (utf8::length(vocab.entries[t].token) <= 1 || p >= 1.0) {
      out[t].loss = kUnremovableLoss;
      continue;
    }
    slot[t] = static_cast<int32_t>(removable.size());
    removable.push_back(static_cast<int32_t>(t));
    log_c.push_back(-std::log1p(-p));
    c.push_back(std::exp(log_c.back()));
  }
  const size_t r = removable.size();

  // Per-chunk partial losses, reduced in chunk order: the sum does not
  // depend on the thread count.
  const size_t n_chunks = (sentences.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(n_chunks);
  internal::parallel_for(n_chunks, threads, [&](size_t chunk) {
    auto& acc = partial[chunk];
    acc.assign(r, 0.0);
    std::vector<double> moments(r);
    std::vector<double> scratch;
    std::vector<std::pair<int32_t, uint32_t>> hits;  // (slot, edge id)
    std::vector<uint32_t> edge_ids;
    const size_t end = std::min(sentences.size(), (chunk + 1) * kChunk);
    for (size_t s = chunk * kChunk; s < end; ++s) {
      const double weight = sentences[s].weight;
      const Lattice lat = training_lattice(sentences[s].text, idx);
      const double log_z = forward_log_weights(lat).back();
      const SentenceLoss sl(lat, log_z);
      sl.log_moments(c, log_c, moments.data());

      hits.clear();
      for (uint32_t i = 0; i < lat.edges().size(); ++i) {
        const int32_t k = slot[static_cast<size_t>(lat.edges()[i].token_id)];
        if (k >= 0) hits.emplace_back(k, i);
      }
      std::sort(hits.begin(), hits.end());
      size_t h = 0;
      for (size_t k = 0; k < r; ++k) {
        if (h < hits.size() && static_cast<size_t>(hits[h].first) == k) {
          edge_ids.clear();
          for (; h < hits.size() && static_cast<size_t>(hits[h].first) == k; ++h) {
            edge_ids.push_back(hits[h].second);
          }
          const double without =
              sl.loglik_without(removable[k], edge_ids, c[k], moments[k], &scratch);
          acc[k] += without == kNegInf ? kUnremovableLoss : weight * (log_z - without);
        } else {
          acc[k] -= weight * moments[k];
        }
      }
    }
  });
  for (size_t k = 0; k < r; ++k) {
    double loss = 0.0;
    for (size_t chunk = 0; chunk < n_chunks; ++chunk) loss += partial[chunk][k];
    out[static_cast<size_t>(removable[k])].loss = loss;
  }
  return out;
}

ScoredVocab initial_vocab(const SeedVocab& seed, std::string_view marker) {
  ScoredVocab vocab;
  vocab.marker = std::string(marker);
  double total = 0.0;
  for (const auto& e : seed.entries) total += static_cast<double>(e.frequency);
  const double log_total = std::log(total);
  for (const auto& e : seed.entries) {
    vocab.entries.push_back({e.piece, std::log(static_cast<double>(e.frequency)) - log_total});
  }
  return vocab;
}

TrainResult train(const SeedVocab& seed, const CorpusHandle& corpus, const TrainConfig& cfg) {
  if (!(cfg.shrink_factor > 0.0 && cfg.shrink_factor < 1.0)) {
    throw_error(ErrorCode::kConfig, "shrink_factor must lie in (0, 1)");
  }
  if (cfg.em_iters_per_round < 1) throw_error(ErrorCode::kConfig, "em_iters_per_round must be >= 1");
  if (cfg.target_size < corpus.charset.size() || cfg.target_size == 0) {
    throw_error(ErrorCode::kConfig, "target_size below charset floor (" +
                                        std::to_string(corpus.charset.size()) + ")");
  }

  TrainResult result;
  ScoredVocab vocab = initial_vocab(seed, corpus.marker);
  {
    const auto chars = vocab.char_set();
    for (const auto& c : corpus.charset) {
      if (!chars.count(c)) throw_error(ErrorCode::kCoverage, "seed misses character '" + c + "'");
    }
  }
  if (vocab.size() < cfg.target_size) {
    result.warnings.push_back("seed vocabulary has only " + std::to_string(vocab.size()) +
                              " pieces, below target_size " + std::to_string(cfg.target_size) +
                              "; returning all pieces");
  }

  for (size_t round = 0;; ++round) {
    TrainRound log;
    log.index = round;
    for (size_t k = 0; k < cfg.em_iters_per_round; ++k) {
      auto step = em_step(vocab, corpus, cfg.threads);
      log.logliks.push_back(step.loglik);
      vocab = std::move(step.vocab);
    }
    log.final_loglik = corpus_loglik(vocab, corpus, cfg.threads);
    log.size_before = vocab.size();
    if (vocab.size() <= cfg.target_size) {
      log.size_after = vocab.size();
      result.rounds.push_back(std::move(log));
      break;
    }

    const auto losses = token_losses(vocab, corpus, cfg.threads);
    size_t target = std::max(cfg.target_size,
                             static_cast<size_t>(cfg.shrink_factor * static_cast<double>(vocab.size())));
    target = std::min(target, vocab.size() - 1);

    std::vector<size_t> removable;
    std::vector<char> keep(vocab.size(), 0);
    size_t kept = 0;
    for (size_t i = 0; i < vocab.size(); ++i) {
      if (losses[i].loss == kUnremovableLoss) {
        keep[i] = 1;
        ++kept;
      } else {
        removable.push_back(i);
      }
    }
    std::sort(removable.begin(), removable.end(), [&](size_t a, size_t b) {
      if (losses[a].loss != losses[b].loss) return losses[a].loss > losses[b].loss;
      return vocab.entries[a].token < vocab.entries[b].token;
    });
    for (size_t i = 0; i < removable.size() && kept < target; ++i, ++kept) keep[removable[i]] = 1;

    ScoredVocab pruned;
    pruned.marker = vocab.marker;
    double mass = 0.0;
    for (size_t i = 0; i < vocab.size(); ++i) {
      if (!keep[i]) continue;
      pruned.entries.push_back(vocab.entries[i]);
      mass += std::exp(vocab.entries[i].score);
    }
    const double log_mass = std::log(mass);
    for (auto& e : pruned.entries) e.score -= log_mass;
    vocab = std::move(pruned);
    log.size_after = vocab.size();
    result.rounds.push_back(std::move(log));
  }

  sort_by_score(&vocab);
  result.vocab = std::move(vocab);
  return result;
}

}  // namespace tat
