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

#include "tat/lattice.h"

#include <algorithm>

#include "tat/error.h"
#include "tat/rng.h"
#include "tat/utf8.h"

namespace tat {
namespace {

void require_connected(const Lattice& lattice) {
  if (!lattice.connected()) {
    throw_error(ErrorCode::kDisconnectedLattice,
                "no segmentation reaches the end of '" + std::string(lattice.text()) + "'");
  }
}

// Partial path in the k-best tables: `edge` is the last edge (-1 at the
// root) and `prev` the rank of the predecessor at edge.start.
struct Hyp {
  double score;
  uint32_t ntok;
  int32_t edge;
  uint32_t prev;
};

class HypTable {
 public:
  explicit HypTable(const Lattice& lattice) : lattice_(lattice), rows_(lattice.size() + 1) {
    rows_[0].push_back({0.0, 0, -1, 0});
  }

  std::vector<Hyp>& row(size_t pos) { return rows_[pos]; }

  // Piece sequence of hyp `h` that would sit at position `pos`.
  std::vector<std::string_view> pieces(const Hyp& h) const {
    std::vector<std::string_view> out;
    Hyp cur = h;
    while (cur.edge >= 0) {
      const auto& e = lattice_.edges()[cur.edge];
      out.push_back(lattice_.surface(e));
      cur = rows_[e.start][cur.prev];
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::vector<uint32_t> edge_path(const Hyp& h) const {
    std::vector<uint32_t> out;
    Hyp cur = h;
    while (cur.edge >= 0) {
      out.push_back(static_cast<uint32_t>(cur.edge));
      cur = rows_[lattice_.edges()[cur.edge].start][cur.prev];
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  bool better(const Hyp& a, const Hyp& b) const {
    if (a.score != b.score) return a.score > b.score;
    if (a.ntok != b.ntok) return a.ntok < b.ntok;
    return pieces(a) < pieces(b);
  }

 private:
  const Lattice& lattice_;
  std::vector<std::vector<Hyp>> rows_;
};

}  // namespace

bool Lattice::connected() const {
  std::vector<char> reach(size() + 1, 0);
  reach[0] = 1;
  for (size_t pos = 0; pos < size(); ++pos) {
    if (!reach[pos]) continue;
    for (uint32_t id : starting_at_[pos]) reach[edges_[id].end] = 1;
  }
  return reach[size()] != 0;
}

Lattice build_lattice(std::string_view text, const Trie& trie, std::span<const double> scores) {
  Lattice lat;
  lat.text_ = std::string(text);
  lat.offsets_ = utf8::boundaries(lat.text_);
  const size_t n = lat.offsets_.size() - 1;
  std::vector<int32_t> char_at_byte(text.size() + 1, -1);
  for (size_t i = 0; i <= n; ++i) char_at_byte[lat.offsets_[i]] = static_cast<int32_t>(i);

  lat.ending_at_.assign(n + 1, {});
  lat.starting_at_.assign(n + 1, {});
  std::vector<int> spanned(n + 1, 0);  // difference array over characters
  for (size_t i = 0; i < n; ++i) {
    const std::string_view rest = std::string_view(lat.text_).substr(lat.offsets_[i]);
    trie.for_each_prefix(rest, [&](size_t byte_len, int32_t id) {
      const int32_t end = char_at_byte[lat.offsets_[i] + byte_len];
      if (end < 0) return;  // not a character boundary
      const auto idx = static_cast<uint32_t>(lat.edges_.size());
      lat.edges_.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(end), id,
                            scores[static_cast<size_t>(id)]});
      lat.starting_at_[i].push_back(idx);
      lat.ending_at_[end].push_back(idx);
      ++spanned[i];
      --spanned[end];
    });
  }
  int running = 0;
  for (size_t i = 0; i < n; ++i) {
    running += spanned[i];
    if (running == 0) {
      throw_error(ErrorCode::kCoverage,
                  "character '" +
                      std::string(text.substr(lat.offsets_[i], lat.offsets_[i + 1] - lat.offsets_[i])) +
                      "' is not covered by the vocabulary");
    }
  }
  return lat;
}

Segmentation segmentation_from_edges(const Lattice& lattice, std::span<const uint32_t> edge_ids) {
  Segmentation seg;
  seg.token_ids.reserve(edge_ids.size());
  seg.pieces.reserve(edge_ids.size());
  for (uint32_t id : edge_ids) {
    const auto& e = lattice.edges()[id];
    seg.token_ids.push_back(e.token_id);
    seg.pieces.emplace_back(lattice.surface(e));
    seg.logprob += e.score;
  }
  return seg;
}

std::vector<Segmentation> nbest(const Lattice& lattice, size_t n) {
  if (n == 0) throw_error(ErrorCode::kInvalidArgument, "nbest requires n >= 1");
  require_connected(lattice);
  HypTable table(lattice);
  auto order = [&table](const Hyp& a, const Hyp& b) { return table.better(a, b); };
  for (size_t pos = 1; pos <= lattice.size(); ++pos) {
    std::vector<Hyp> cands;
    for (uint32_t id : lattice.ending_at(pos)) {
      const auto& e = lattice.edges()[id];
      const auto& prev = table.row(e.start);
      for (uint32_t k = 0; k < prev.size(); ++k) {
        cands.push_back({prev[k].score + e.score, prev[k].ntok + 1, static_cast<int32_t>(id), k});
      }
    }
    if (cands.size() > n) {
      std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(n), cands.end(),
                        order);
      cands.resize(n);
    } else {
      std::sort(cands.begin(), cands.end(), order);
    }
    table.row(pos) = std::move(cands);
  }
  std::vector<Segmentation> out;
  for (const auto& h : table.row(lattice.size())) {
    const auto path = table.edge_path(h);
    out.push_back(segmentation_from_edges(lattice, path));
  }
  return out;
}

Segmentation viterbi(const Lattice& lattice) { return std::move(nbest(lattice, 1).front()); }

std::vector<double> forward_log_weights(const Lattice& lattice, double scale) {
  std::vector<double> fwd(lattice.size() + 1, kNegInf);
  fwd[0] = 0.0;
  for (size_t pos = 1; pos <= lattice.size(); ++pos) {
    double acc = kNegInf;
    for (uint32_t id : lattice.ending_at(pos)) {
      const auto& e = lattice.edges()[id];
      acc = log_add(acc, fwd[e.start] + scale * e.score);
    }
    fwd[pos] = acc;
  }
  return fwd;
}

std::vector<double> backward_log_weights(const Lattice& lattice, double scale) {
  const size_t n = lattice.size();
  std::vector<double> bwd(n + 1, kNegInf);
  bwd[n] = 0.0;
  for (size_t pos = n; pos-- > 0;) {
    double acc = kNegInf;
    for (uint32_t id : lattice.starting_at(pos)) {
      const auto& e = lattice.edges()[id];
      acc = log_add(acc, bwd[e.end] + scale * e.score);
    }
    bwd[pos] = acc;
  }
  return bwd;
}

double marginal_loglik(const Lattice& lattice) {
  require_connected(lattice);
  return forward_log_weights(lattice).back();
}

std::vector<double> edge_posteriors(const Lattice& lattice, double* loglik) {
  require_connected(lattice);
  const auto fwd = forward_log_weights(lattice);
  const auto bwd = backward_log_weights(lattice);
  const double z = fwd.back();
  std::vector<double> post(lattice.edges().size());
  for (size_t i = 0; i < post.size(); ++i) {
    const auto& e = lattice.edges()[i];
    post[i] = std::exp(fwd[e.start] + e.score + bwd[e.end] - z);
  }
  if (loglik != nullptr) *loglik = z;
  return post;
}

Segmentation sample(const Lattice& lattice, const SamplerConfig& cfg, uint64_t draw_index) {
  if (!std::isfinite(cfg.alpha) || cfg.alpha < 0.0) {
    throw_error(ErrorCode::kInvalidArgument, "alpha must be finite and >= 0");
  }
  require_connected(lattice);
  const auto fwd = forward_log_weights(lattice, cfg.alpha);
  CounterRng rng(cfg.seed, draw_index);
  std::vector<uint32_t> path;
  size_t pos = lattice.size();
  while (pos > 0) {
    const auto& incoming = lattice.ending_at(pos);
    const double u = rng.uniform();
    double cumulative = 0.0;
    // Rounding leftovers fall on the last reachable edge.
    uint32_t chosen = incoming.back();
    for (uint32_t id : incoming) {
      const auto& e = lattice.edges()[id];
      const double lw = fwd[e.start] + cfg.alpha * e.score - fwd[pos];
      if (lw == kNegInf) continue;
      chosen = id;
      cumulative += std::exp(lw);
      if (u < cumulative) break;
    }
    path.push_back(chosen);
    pos = lattice.edges()[chosen].start;
  }
  std::reverse(path.begin(), path.end());
  return segmentation_from_edges(lattice, path);
}

}  // namespace tat
