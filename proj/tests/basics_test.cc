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

#include <cmath>
#include <cstdlib>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tat/error.h"
#include "tat/io.h"
#include "tat/rng.h"
#include "tat/scored_vocab.h"
#include "tat/trie.h"
#include "tat/utf8.h"
#include "testing/oracles.h"

namespace tat {
namespace {

TEST(Utf8Test, LengthsAndBoundaries) {
  const std::string s = "a\xC3\xA9\xE2\x96\x81\xF0\x9F\x98\x80";  // a é ▁ 😀
  EXPECT_TRUE(utf8::is_valid(s));
  EXPECT_EQ(utf8::length(s), 4u);
  EXPECT_EQ(utf8::boundaries(s), (std::vector<size_t>{0, 1, 3, 6, 10}));
  EXPECT_EQ(utf8::split_chars(s).size(), 4u);
  EXPECT_EQ(utf8::boundaries(""), (std::vector<size_t>{0}));
  size_t pos = 1;
  EXPECT_EQ(utf8::decode(s, &pos), U'é');
  EXPECT_EQ(pos, 3u);
  EXPECT_EQ(utf8::encode(U'\U0001F600'), "\xF0\x9F\x98\x80");
}

TEST(Utf8Test, RejectsMalformed) {
  for (const char* bad : {"\xC3", "\x80", "\xC0\xAF", "\xED\xA0\x80", "\xF4\x90\x80\x80", "a\xFF"}) {
    EXPECT_FALSE(utf8::is_valid(bad)) << bad;
  }
}

TEST(Utf8Test, EncodeDecodeAllPlanes) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    char32_t cp = static_cast<char32_t>(testing::uniform_index(rng, 0x110000));
    if (cp >= 0xD800 && cp <= 0xDFFF) continue;
    const std::string e = utf8::encode(cp);
    ASSERT_TRUE(utf8::is_valid(e));
    size_t pos = 0;
    EXPECT_EQ(utf8::decode(e, &pos), cp);
    EXPECT_EQ(pos, e.size());
  }
}

TEST(TrieTest, PrefixesShortestFirst) {
  Trie t;
  EXPECT_TRUE(t.insert("a", 0));
  EXPECT_TRUE(t.insert("abc", 1));
  EXPECT_TRUE(t.insert("ab", 2));
  EXPECT_FALSE(t.insert("ab", 9));
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.find("ab"), 2);
  EXPECT_FALSE(t.find("b"));
  EXPECT_FALSE(t.find(""));
  std::vector<std::pair<size_t, int32_t>> hits;
  t.for_each_prefix("abcd", [&](size_t len, int32_t id) { hits.emplace_back(len, id); });
  EXPECT_EQ(hits, (std::vector<std::pair<size_t, int32_t>>{{1, 0}, {2, 2}, {3, 1}}));
}

TEST(TrieTest, MatchesLinearScan) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 50; ++round) {
    Trie t;
    std::vector<std::string> keys;
    for (int i = 0; i < 30; ++i) {
      std::string k;
      const size_t n = 1 + testing::uniform_index(rng, 4);
      for (size_t j = 0; j < n; ++j) k.push_back(static_cast<char>('a' + testing::uniform_index(rng, 3)));
      if (t.insert(k, static_cast<int32_t>(keys.size()))) keys.push_back(k);
    }
    const std::string text = "abcabcbaca";
    std::set<std::pair<size_t, int32_t>> want, got;
    for (size_t i = 0; i < keys.size(); ++i) {
      if (text.compare(0, keys[i].size(), keys[i]) == 0) want.emplace(keys[i].size(), static_cast<int32_t>(i));
    }
    t.for_each_prefix(text, [&](size_t len, int32_t id) { got.emplace(len, id); });
    EXPECT_EQ(got, want);
  }
}

// Reference SplitMix64 (Steele, Lea and Flood), written out independently.
uint64_t splitmix_next(uint64_t* state) {
  uint64_t z = (*state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// The bare finalizer, i.e. one SplitMix64 step from state x - gamma.
uint64_t ref_mix(uint64_t x) {
  uint64_t s = x - 0x9E3779B97F4A7C15ULL;
  return splitmix_next(&s);
}

TEST(CounterRngTest, KnownValues) {
  // First output of SplitMix64 seeded with 0.
  EXPECT_EQ(CounterRng::mix64(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
  for (uint64_t seed : {0ULL, 1ULL, 20240611ULL}) {
    for (uint64_t stream : {0ULL, 7ULL}) {
      // Draw k is mix64(key + k * gamma): a plain SplitMix64 stream from key.
      uint64_t state = ref_mix(seed ^ ref_mix(stream + 0x9E3779B97F4A7C15ULL));
      CounterRng rng(seed, stream);
      for (int i = 0; i < 5; ++i) EXPECT_EQ(rng.next(), splitmix_next(&state));
    }
  }
}

TEST(CounterRngTest, UniformRangeAndStreams) {
  CounterRng a(3, 0), b(3, 0), c(3, 1);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform());
    differs |= u != c.uniform();
  }
  EXPECT_TRUE(differs);
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("tat_basics_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

using IoTest = TempDir;

TEST_F(IoTest, AtomicWriteReplacesAndLeavesNoTemp) {
  atomic_write(path("f.txt"), "one");
  atomic_write(path("f.txt"), "two\n");
  EXPECT_EQ(read_file(path("f.txt")), "two\n");
  size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) files += e.is_regular_file();
  EXPECT_EQ(files, 1u);
  try {
    read_file(path("missing"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  atomic_write(path("new/sub/f"), "x");  // parents are created
  EXPECT_EQ(read_file(path("new/sub/f")), "x");
  EXPECT_THROW(atomic_write(path("f.txt/below_a_file"), "x"), Error);
}

TEST(SplitLinesTest, Examples) {
  EXPECT_EQ(split_lines("a\r\nb\n\nc"), (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_EQ(split_lines("a\n"), (std::vector<std::string>{"a"}));
  EXPECT_TRUE(split_lines("").empty());
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_float(0.1f), "0.1");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5000; ++i) {
    const double d = std::ldexp(testing::uniform01(rng) - 0.5, static_cast<int>(testing::uniform_index(rng, 200)) - 100);
    EXPECT_EQ(std::stod(format_double(d)), d);
    const float f = static_cast<float>(d);
    EXPECT_EQ(std::stof(format_float(f)), f);
  }
  EXPECT_EQ(std::strtod(format_double(std::numeric_limits<double>::denorm_min()).c_str(), nullptr),
            std::numeric_limits<double>::denorm_min());
}

using ScoredVocabTsvTest = TempDir;

TEST_F(ScoredVocabTsvTest, RoundTrip) {
  ScoredVocab v = testing::make_vocab({{"\xE2\x96\x81the", -1.25}, {"a", -2.0}, {"b", -2.0}, {"ab", 0.1}});
  sort_by_score(&v);
  EXPECT_EQ(v.entries[0].token, "ab");
  EXPECT_EQ(v.entries[2].token, "a");
  const std::string tsv = vocab_to_tsv(v);
  EXPECT_EQ(tsv.rfind("# version: 1\n", 0), 0u);
  EXPECT_NE(tsv.find("# charset_size: 2\n"), std::string::npos);
  EXPECT_EQ(vocab_from_tsv(tsv), v);
  write_vocab(v, path("v.tsv"));
  EXPECT_EQ(read_vocab(path("v.tsv")), v);
  EXPECT_EQ(v.char_set(), (std::set<std::string>{"a", "b"}));
  EXPECT_EQ(v.min_score(), -2.0);
}

TEST(ScoredVocabTest, MalformedTsv) {
  for (const char* bad : {"a\n", "a\tnotanumber\n", "a\t-1\na\t-2\n", "\t-1\n", "a\tnan\n"}) {
    EXPECT_THROW(vocab_from_tsv(bad), Error) << bad;
  }
}

}  // namespace
}  // namespace tat
