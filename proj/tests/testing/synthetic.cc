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

#include "synthetic.h"

#include <cmath>
#include <random>
#include <set>

#include "oracles.h"

namespace tat::testing {
namespace {

constexpr const char* kMarker = "\xE2\x96\x81";

std::string make_word(std::mt19937_64& rng) {
  static const char kConsonants[] = "bcdfghklmnprstvz";
  static const char kVowels[] = "aeiou";
  const size_t syllables = 1 + uniform_index(rng, 4);
  std::string w;
  for (size_t i = 0; i < syllables; ++i) {
    w += kConsonants[uniform_index(rng, sizeof(kConsonants) - 1)];
    w += kVowels[uniform_index(rng, sizeof(kVowels) - 1)];
    if (uniform01(rng) < 0.2) w += kConsonants[uniform_index(rng, sizeof(kConsonants) - 1)];
  }
  return w;
}

// Zipf(1) sampler over [0, n).
class Zipf {
 public:
  explicit Zipf(size_t n) : cdf_(n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) cdf_[i] = acc += 1.0 / static_cast<double>(i + 1);
    for (double& c : cdf_) c /= acc;
  }
  size_t operator()(std::mt19937_64& rng) const {
    const double u = uniform01(rng);
    size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      if (cdf_[mid] < u) lo = mid + 1; else hi = mid;
    }
    return lo;
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

SyntheticData make_synthetic(const SyntheticOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<std::string> lexicon;
  std::set<std::string> seen;
  while (lexicon.size() < opts.lexicon) {
    std::string w = make_word(rng);
    if (seen.insert(w).second) lexicon.push_back(std::move(w));
  }
  const Zipf word_dist(lexicon.size());

  std::vector<std::string> phrases;
  for (size_t i = 0; i < opts.phrases; ++i) {
    const size_t n = 2 + uniform_index(rng, 3);
    std::string p;
    for (size_t k = 0; k < n; ++k) {
      if (k > 0) p += ' ';
      p += lexicon[word_dist(rng)];
    }
    phrases.push_back(std::move(p));
  }
  const Zipf phrase_dist(phrases.size());

  SyntheticData out;
  for (size_t s = 0; s < opts.sentences; ++s) {
    const size_t units = 3 + uniform_index(rng, 8);
    std::string line;
    for (size_t u = 0; u < units; ++u) {
      if (u > 0) line += ' ';
      line += uniform01(rng) < opts.phrase_rate ? phrases[phrase_dist(rng)] : lexicon[word_dist(rng)];
    }
    out.corpus.push_back(std::move(line));
  }

  // Original vocabulary: specials, letters in both positions, frequent
  // letter pairs, and a slice of the lexicon as whole words.
  auto& v = out.original_vocab;
  v = {"<pad>", "<unk>", "<s>", "</s>", kMarker};
  for (char c = 'a'; c <= 'z'; ++c) {
    v.push_back(std::string(1, c));
    v.push_back(kMarker + std::string(1, c));
  }
  static const char kPairs[][3] = {"ba", "ka", "ma", "na", "ta", "ro", "li", "se", "de", "vu",
                                   "ar", "en", "is", "on", "ul"};
  for (const auto* p : kPairs) v.push_back(p);
  for (size_t i = 0; i < lexicon.size(); i += 4) v.push_back(kMarker + lexicon[i]);
  return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace tat::testing
