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

#include "tat/corpus.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tat/error.h"
#include "testing/oracles.h"

namespace tat {
namespace {

const std::string kM(kDefaultMarker);

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("tat_corpus_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

TEST(NormalizeTest, MarkerBeforeEveryWord) {
  EXPECT_EQ(normalize("a sense of purpose in life"),
            kM + "a" + kM + "sense" + kM + "of" + kM + "purpose" + kM + "in" + kM + "life");
}

TEST(NormalizeTest, CollapsesWhitespaceRuns) {
  EXPECT_EQ(normalize("  a \t\t b  "), kM + "a" + kM + "b");
  // U+3000 IDEOGRAPHIC SPACE is white space too.
  EXPECT_EQ(normalize("a\xE3\x80\x80" "b"), kM + "a" + kM + "b");
  EXPECT_EQ(normalize("   "), "");
}

TEST(NormalizeTest, AppliesNfc) {
  // "e" + combining acute composes to U+00E9.
  EXPECT_EQ(normalize("e\xCC\x81"), kM + "\xC3\xA9");
}

TEST(NormalizeTest, RejectsMarkerAndBadUtf8) {
  try {
    normalize("a " + kM + "b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMarkerCollision);
  }
  try {
    normalize("a\xFF");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEncoding);
  }
}

TEST(NormalizeTest, CustomMarker) {
  EXPECT_EQ(normalize("a b", "_"), "_a_b");
}

TEST(DenormalizeTest, Examples) {
  const std::vector<std::string> pieces = {kM + "a" + kM + "sense", kM + "of"};
  EXPECT_EQ(denormalize(pieces), "a sense of");
  EXPECT_EQ(denormalize(std::vector<std::string>{}), "");
  // No marker between the two pieces, so no space.
  const std::vector<std::string> zh = {kM + "\xE7\xA4\xBE\xE4\xBA\xA4", "\xE5\xAD\xA4\xE7\xAB\x8B"};
  EXPECT_EQ(denormalize(zh), "\xE7\xA4\xBE\xE4\xBA\xA4\xE5\xAD\xA4\xE7\xAB\x8B");
}

TEST(DenormalizeTest, RoundTripOverRandomStrings) {
  std::mt19937_64 rng(7);
  static const char* kPool[] = {"a", "b", " ", "  ", "\t", "\xE5\xAD\xA4", "\xC3\xA9", "z"};
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const size_t n = testing::uniform_index(rng, 12);
    for (size_t k = 0; k < n; ++k) s += kPool[testing::uniform_index(rng, 8)];
    EXPECT_EQ(denormalize(normalize(s)), collapse_whitespace(s)) << s;
  }
}

TEST(LengthUnitTest, CountsCharactersAndWords) {
  EXPECT_EQ(count_length_units("ab  cd", LengthUnit::kCharacter), 4u);
  EXPECT_EQ(count_length_units("ab  cd", LengthUnit::kWhitespaceWord), 2u);
  EXPECT_EQ(count_length_units("\xE7\xA4\xBE\xE4\xBA\xA4", LengthUnit::kCharacter), 2u);
  EXPECT_EQ(parse_length_unit("word"), LengthUnit::kWhitespaceWord);
  EXPECT_THROW(parse_length_unit("token"), Error);
}

TEST(IngestTest, EmptyFile) {
  const CorpusHandle c = ingest(write_temp("empty", ""), LengthUnit::kCharacter);
  EXPECT_TRUE(c.sentences.empty());
  EXPECT_TRUE(c.charset.empty());
}

TEST(IngestTest, DuplicateLinesAndCharset) {
  const CorpusHandle c = ingest(write_temp("dup", "ab\n\nab\n"), LengthUnit::kCharacter);
  ASSERT_EQ(c.sentences.size(), 2u);
  EXPECT_EQ(c.sentences[0].text, kM + "ab");
  EXPECT_EQ(c.sentences[0].original_length_units, 2u);
  EXPECT_EQ(c.charset, (std::set<std::string>{kM, "a", "b"}));
}

TEST(IngestTest, Errors) {
  try {
    ingest("/nonexistent/tat/corpus.txt", LengthUnit::kCharacter);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  try {
    ingest(write_temp("bad", "ok\n\xC3\x28\n"), LengthUnit::kCharacter);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEncoding);
  }
  try {
    ingest(write_temp("marker", "a " + kM + "\n"), LengthUnit::kCharacter);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMarkerCollision);
  }
}

TEST(IngestTest, Deterministic) {
  const std::string path = write_temp("det", "x y\r\nz\n\xE5\xAD\xA4 q\n");
  EXPECT_EQ(ingest(path, LengthUnit::kWhitespaceWord), ingest(path, LengthUnit::kWhitespaceWord));
  const CorpusHandle c = ingest(path, LengthUnit::kWhitespaceWord);
  ASSERT_EQ(c.sentences.size(), 3u);
  EXPECT_EQ(c.sentences[0].original_length_units, 2u);
  EXPECT_EQ(c.sentences[0].text, kM + "x" + kM + "y");
}

}  // namespace
}  // namespace tat
