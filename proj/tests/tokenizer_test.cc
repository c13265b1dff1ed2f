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

#include "tat/tokenizer.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tat/corpus.h"
#include "tat/error.h"
#include "tat/vocab_merge.h"
#include "testing/oracles.h"

namespace tat {
namespace {

using testing::make_vocab;

const std::string kM(kDefaultMarker);

Tokenizer phrase_tokenizer() {
  ScoredVocab v = make_vocab({{kM + "a" + kM + "sense", -3.0},
                              {kM + "of", -2.0},
                              {kM + "purpose", -3.0},
                              {kM + "in" + kM + "life", -3.5},
                              {kM + "in", -2.0},
                              {kM + "life", -2.5},
                              {kM + "a", -2.0},
                              {kM + "sense", -2.5}});
  for (const char* c : {"a", "s", "e", "n", "o", "f", "p", "u", "r", "i", "l"}) v.entries.push_back({c, -6.0});
  v.entries.push_back({kM, -5.0});
  return Tokenizer::from_vocab(v);
}

TEST(TokenizerTest, EncodeDecode) {
  const Tokenizer tok = phrase_tokenizer();
  const auto seg = tok.encode("a sense of purpose in life");
  EXPECT_EQ(seg.pieces, (std::vector<std::string>{kM + "a" + kM + "sense", kM + "of", kM + "purpose",
                                                  kM + "in" + kM + "life"}));
  EXPECT_EQ(tok.decode(seg.token_ids), "a sense of purpose in life");
  EXPECT_TRUE(tok.encode("").token_ids.empty());
  EXPECT_TRUE(tok.encode("   ").token_ids.empty());
}

TEST(TokenizerTest, NbestContainsCoarseSegmentation) {
  const auto list = phrase_tokenizer().nbest("a sense of purpose in life", 20);
  const std::vector<std::string> coarse = {kM + "a" + kM + "sense", kM + "of", kM + "purpose",
                                           kM + "in" + kM + "life"};
  bool found = false;
  std::set<std::vector<std::string>> distinct;
  for (const auto& s : list) {
    found |= s.pieces == coarse;
    distinct.insert(s.pieces);
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(distinct.size(), list.size());
}

TEST(TokenizerTest, SamplingVariesButDecodesIdentically) {
  const Tokenizer tok = phrase_tokenizer();
  EncodeOptions opts;
  opts.mode = EncodeMode::kSample;
  opts.sampler.alpha = 0.1;
  std::set<std::vector<int32_t>> seen;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    opts.sampler.seed = seed;
    const auto seg = tok.encode("a sense of purpose in life", opts);
    seen.insert(seg.token_ids);
    EXPECT_EQ(tok.decode(seg.token_ids), "a sense of purpose in life");
  }
  EXPECT_GT(seen.size(), 1u);
  opts.sampler.seed = 3;
  EXPECT_EQ(tok.encode("a sense of life", opts), tok.encode("a sense of life", opts));
}

TEST(TokenizerTest, Errors) {
  const Tokenizer tok = phrase_tokenizer();
  try {
    tok.encode("xyz");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCoverage);
  }
  const std::vector<int32_t> bad = {0, 999};
  try {
    tok.decode(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownTokenId);
  }
  EXPECT_THROW(tok.token(-1), Error);
}

TEST(TokenizerTest, UnkPassthrough) {
  OriginalVocab orig;
  orig.entries = {{"<unk>", true, std::nullopt}};
  const MergedVocab m = merge(orig, make_vocab({{kM, -1.0}, {"a", -1.0}, {"b", -2.0}}), {});
  const Tokenizer tok = make_tokenizer(m);
  EncodeOptions opts;
  opts.unk_id = 0;
  const auto seg = tok.encode("ab xa", opts);
  EXPECT_EQ(seg.pieces, (std::vector<std::string>{kM, "a", "b", kM, "x", "a"}));
  EXPECT_EQ(seg.token_ids[4], 0);
  opts.mode = EncodeMode::kSample;
  EXPECT_EQ(tok.encode("x", opts).token_ids, (std::vector<int32_t>{tok.find(kM).value(), 0}));
  EXPECT_THROW(tok.encode("ab xa"), Error);
}

TEST(TokenizerTest, RoundTripRandomCoveredStrings) {
  const Tokenizer tok = phrase_tokenizer();
  std::mt19937_64 rng(12);
  static const char* kPool[] = {"a", "sense", "of", "purpose", "in", "life", "fun", " ", "  ", "\t"};
  EncodeOptions sample;
  sample.mode = EncodeMode::kSample;
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const size_t n = testing::uniform_index(rng, 10);
    for (size_t k = 0; k < n; ++k) s += kPool[testing::uniform_index(rng, 10)];
    const std::string want = collapse_whitespace(s);
    EXPECT_EQ(tok.decode(tok.encode(s).token_ids), want);
    sample.draw_index = static_cast<uint64_t>(i);
    EXPECT_EQ(tok.decode(tok.encode(s, sample).token_ids), want);
  }
}

}  // namespace
}  // namespace tat
