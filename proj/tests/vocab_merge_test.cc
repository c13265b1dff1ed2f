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

#include "tat/vocab_merge.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tat/error.h"
#include "tat/utf8.h"
#include "testing/oracles.h"

namespace tat {
namespace {

using testing::make_vocab;

const std::string kM(kDefaultMarker);

OriginalVocab list_vocab(const std::vector<std::string>& tokens, ImportOptions opts = {}) {
  std::string content;
  for (const auto& t : tokens) content += t + "\n";
  return parse_original(content, opts);
}

TEST(AssignScoreTest, Formula) {
  EXPECT_DOUBLE_EQ(assign_score("a", 10.0), -20.0);
  EXPECT_DOUBLE_EQ(assign_score("abcd", 10.0), -12.5);
  EXPECT_DOUBLE_EQ(assign_score(kM + "abc", 10.0), -12.5);  // marker counts as one character
  EXPECT_GT(assign_score("abcdefghij", 3.0), assign_score("ab", 3.0));
  EXPECT_NEAR(assign_score("the", 9.2), -12.2667, 1e-4);
  EXPECT_NEAR(assign_score(std::string(100, 'x'), 9.2), -9.292, 1e-12);
  try {
    assign_score("", 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroLength);
  }
}

TEST(DefaultBigScoreTest, Examples) {
  EXPECT_DOUBLE_EQ(default_big_score(make_vocab({{"a", -2.1}, {"b", -9.2}, {"c", -5.0}})), 9.2);
  EXPECT_EQ(default_big_score(make_vocab({{"a", -0.0}})), 0.0);
  EXPECT_THROW(default_big_score(ScoredVocab{}), Error);
}

TEST(MergeTest, DegenerateTaskVocabIsConfigError) {
  try {
    merge(list_vocab({"x"}), make_vocab({{"a", -0.0}}), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(MergeTest, PreservesIdsAndAppends) {
  const OriginalVocab orig = list_vocab({"<pad>", kM + "the", "in", kM + "a"});
  const ScoredVocab task = make_vocab({{kM + "a", -1.0}, {kM + "mental" + kM + "health", -3.0}, {"zz", -2.0}});
  std::vector<std::string> log;
  const MergedVocab m = merge(orig, task, {}, &log);
  ASSERT_EQ(m.size(), 6u);
  EXPECT_EQ(m.original_size, 4u);
  EXPECT_EQ(m.entries[2].token, "in");
  // Task-only tokens in task-score order.
  EXPECT_EQ(m.entries[4].token, "zz");
  EXPECT_EQ(m.entries[5].token, kM + "mental" + kM + "health");
  EXPECT_EQ(m.entries[5].origin, Origin::kTask);
  EXPECT_EQ(m.entries[5].score, -3.0);
  // Special token.
  EXPECT_TRUE(m.entries[0].never_sample);
  EXPECT_EQ(m.entries[0].score, kSpecialTokenScore);
  // Overlap: original id, task score.
  EXPECT_EQ(m.entries[3].origin, Origin::kOverlap);
  EXPECT_EQ(m.entries[3].score, -1.0);
  // Rule 2 with big_score = 3.
  EXPECT_DOUBLE_EQ(m.big_score, 3.0);
  EXPECT_DOUBLE_EQ(m.entries[1].score, assign_score(kM + "the", 3.0));
  EXPECT_DOUBLE_EQ(m.entries[2].score, -4.5);
}

TEST(MergeTest, BigScoreTooSmall) {
  MergeConfig cfg;
  cfg.big_score = 1.0;  // "ab" would score -1.5 > -2
  try {
    merge(list_vocab({"ab"}), make_vocab({{"x", -2.0}}), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
  cfg.big_score = -5.0;
  EXPECT_THROW(merge(list_vocab({"ab"}), make_vocab({{"x", -2.0}}), cfg), Error);
  cfg.big_score = 2.0;  // strictly below for every length
  EXPECT_NO_THROW(merge(list_vocab({std::string(50, 'a')}), make_vocab({{"x", -2.0}}), cfg));
}

TEST(MergeTest, DuplicateOriginalToken) {
  try {
    merge(list_vocab({"a", "b", "a"}), make_vocab({{"x", -2.0}}), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateToken);
  }
}

TEST(MergeTest, KeepOriginalScores) {
  ImportOptions opts;
  opts.format = OriginalFormat::kTsv;
  const OriginalVocab orig = parse_original("a\t-7.5\nb\t-8\n", opts);
  EXPECT_TRUE(orig.has_scores);
  const ScoredVocab task = make_vocab({{"x", -2.0}});
  EXPECT_DOUBLE_EQ(merge(orig, task, {}).entries[0].score, -4.0);  // formula by default
  MergeConfig keep;
  keep.keep_original_scores = true;
  EXPECT_DOUBLE_EQ(merge(orig, task, keep).entries[0].score, -7.5);
}

TEST(MergeTest, TaskTokenEqualToSpecialIsSkipped) {
  std::vector<std::string> log;
  const MergedVocab m = merge(list_vocab({"<s>", "a"}), make_vocab({{"<s>", -1.0}, {"b", -2.0}}), {}, &log);
  EXPECT_EQ(m.size(), 3u);
  EXPECT_TRUE(m.entries[0].never_sample);
  EXPECT_EQ(m.entries[0].origin, Origin::kOriginal);
  EXPECT_TRUE(std::any_of(log.begin(), log.end(),
                          [](const std::string& l) { return l.find("special") != std::string::npos; }));
}

TEST(ImportTest, Formats) {
  ImportOptions json_opts;
  json_opts.format = OriginalFormat::kJson;
  const OriginalVocab j = parse_original(R"({"b": 1, "a": 0, "[CLS]": 2})", json_opts);
  ASSERT_EQ(j.entries.size(), 3u);
  EXPECT_EQ(j.entries[0].token, "a");
  EXPECT_TRUE(j.entries[2].special);
  EXPECT_THROW(parse_original(R"({"a": 0, "b": 2})", json_opts), Error);
  EXPECT_THROW(parse_original("[1,2]", json_opts), Error);

  ImportOptions tsv;
  tsv.format = OriginalFormat::kTsv;
  EXPECT_THROW(parse_original("a -1\n", tsv), Error);

  ImportOptions explicit_specials;
  explicit_specials.special_tokens = {"EOS"};
  explicit_specials.detect_specials = false;
  const OriginalVocab l = list_vocab({"EOS", "<unk>"}, explicit_specials);
  EXPECT_TRUE(l.entries[0].special);
  EXPECT_FALSE(l.entries[1].special);
}

TEST(ImportTest, LooksSpecial) {
  EXPECT_TRUE(looks_special("<unk>"));
  EXPECT_TRUE(looks_special("<|endoftext|>"));
  EXPECT_TRUE(looks_special("[SEP]"));
  EXPECT_FALSE(looks_special("<>"));
  EXPECT_FALSE(looks_special("[a b]"));
  EXPECT_FALSE(looks_special("a<b>"));
}

TEST(ConventionTest, DetectAndTranslate) {
  EXPECT_EQ(list_vocab({"a", "\xC4\xA0the"}).convention, Convention::kByteLevel);
  EXPECT_EQ(list_vocab({"a", "##ing"}).convention, Convention::kWordPiece);
  EXPECT_EQ(list_vocab({"a", kM + "b"}).convention, Convention::kSentencePiece);

  // Byte level: "Ġ" is the space byte; "Ã©" is the two bytes of "é".
  EXPECT_EQ(to_internal("\xC4\xA0the", Convention::kByteLevel, kM), kM + "the");
  EXPECT_EQ(to_internal("\xC3\x83\xC2\xA9", Convention::kByteLevel, kM), "\xC3\xA9");
  // A lone lead byte is not valid UTF-8 and stays verbatim.
  EXPECT_EQ(to_internal("\xC3\x83", Convention::kByteLevel, kM), "\xC3\x83");
  EXPECT_EQ(to_internal("##ing", Convention::kWordPiece, kM), "ing");
  EXPECT_EQ(to_internal("play", Convention::kWordPiece, kM), kM + "play");
  EXPECT_EQ(to_internal("_a", Convention::kSentencePiece, "_"), "_a");
  EXPECT_EQ(to_internal(kM + "a", Convention::kSentencePiece, "_"), "_a");

  EXPECT_EQ(to_original_surface(kM + "the", Convention::kByteLevel, kM), "\xC4\xA0the");
  EXPECT_EQ(to_original_surface("ing", Convention::kWordPiece, kM), "##ing");
  EXPECT_EQ(to_original_surface(kM + "a" + kM + "b", Convention::kWordPiece, kM), "a b");
  EXPECT_EQ(to_original_surface(kM + "a", Convention::kSentencePiece, kM), kM + "a");
}

TEST(ConventionTest, ByteLevelRoundTrip) {
  std::mt19937_64 rng(1);
  static const char* kPool[] = {"a", "Z", "\xC3\xA9", "\xE5\xAD\xA4", "~", "\xF0\x9F\x98\x80"};
  for (int i = 0; i < 200; ++i) {
    std::string t = testing::uniform_index(rng, 2) ? kM : "";
    const size_t n = 1 + testing::uniform_index(rng, 4);
    for (size_t k = 0; k < n; ++k) t += kPool[testing::uniform_index(rng, 6)];
    const std::string surface = to_original_surface(t, Convention::kByteLevel, kM);
    EXPECT_EQ(to_internal(surface, Convention::kByteLevel, kM), t);
  }
}

TEST(MergeTest, ByteLevelOverlap) {
  const MergedVocab m = merge(list_vocab({"<|endoftext|>", "\xC4\xA0the", "t", "h", "e"}),
                              make_vocab({{kM + "the", -1.0}, {"e", -2.0}}), {});
  EXPECT_EQ(m.convention, Convention::kByteLevel);
  EXPECT_EQ(m.entries[1].token, kM + "the");
  EXPECT_EQ(m.entries[1].raw, "\xC4\xA0the");
  EXPECT_EQ(m.entries[1].origin, Origin::kOverlap);
  EXPECT_EQ(m.size(), 5u);
}

// Randomized protocol checks.
TEST(MergeTest, RandomizedProtocolProperties) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::string> pool;
    while (pool.size() < 30) {
      std::string t = testing::uniform_index(rng, 2) ? kM : "";
      const size_t n = 1 + testing::uniform_index(rng, 5);
      for (size_t k = 0; k < n; ++k) t += "abcd"[testing::uniform_index(rng, 4)];
      pool.insert(t);
    }
    std::vector<std::string> all(pool.begin(), pool.end());
    std::vector<std::string> orig_tokens = {"<unk>"};
    ScoredVocab task;
    for (const auto& t : all) {
      const size_t r = testing::uniform_index(rng, 3);
      if (r != 1) orig_tokens.push_back(t);
      if (r != 0) task.entries.push_back({t, -0.5 - 10.0 * testing::uniform01(rng)});
    }
    if (task.entries.empty()) continue;
    const OriginalVocab orig = list_vocab(orig_tokens);
    const MergedVocab m = merge(orig, task, {});

    const double min_task = task.min_score();
    std::set<std::string> task_set;
    for (const auto& e : task.entries) task_set.insert(e.token);
    for (size_t i = 0; i < m.original_size; ++i) {
      EXPECT_EQ(m.entries[i].token, orig.entries[i].token);
      EXPECT_EQ(m.entries[i].id, static_cast<int32_t>(i));
      if (m.entries[i].origin == Origin::kOriginal && !m.entries[i].never_sample) {
        EXPECT_LT(m.entries[i].score, min_task);
      }
    }
    for (size_t i = m.original_size; i < m.size(); ++i) {
      EXPECT_EQ(m.entries[i].origin, Origin::kTask);
      EXPECT_FALSE(std::count(orig_tokens.begin(), orig_tokens.end(), m.entries[i].token));
    }
    for (const auto& e : m.entries) {
      if (e.origin == Origin::kOverlap) {
        EXPECT_LT(static_cast<size_t>(e.id), m.original_size);
        EXPECT_TRUE(task_set.count(e.token));
      }
    }
    // Rule-2 scores grow with length.
    for (const auto& a : m.entries) {
      for (const auto& b : m.entries) {
        if (a.origin != Origin::kOriginal || b.origin != Origin::kOriginal || a.never_sample ||
            b.never_sample) {
          continue;
        }
        if (utf8::length(a.token) < utf8::length(b.token)) {
          EXPECT_LT(a.score, b.score);
        }
      }
    }
    const auto overlaps = static_cast<size_t>(std::count_if(
        m.entries.begin(), m.entries.end(), [](const MergedEntry& e) { return e.origin == Origin::kOverlap; }));
    EXPECT_EQ(m.size(), orig.entries.size() + task.size() - overlaps);
    EXPECT_EQ(extend(m, task, {}), m);
    EXPECT_EQ(merged_from_json(merged_to_json(m)), m);
  }
}

TEST(MergedJsonTest, RejectsMalformed) {
  EXPECT_THROW(merged_from_json("{"), Error);
  EXPECT_THROW(merged_from_json(R"({"version":1,"entries":[{"id":1,"token":"a","score":0,"origin":"task","never_sample":false}]})"),
               Error);
}

TEST(MakeTokenizerTest, SpecialsNeverSampled) {
  const MergedVocab m = merge(list_vocab({"<unk>", "<", "u", "n", "k", ">"}), make_vocab({{"a", -1.0}}), {});
  const Tokenizer tok = make_tokenizer(m);
  EXPECT_TRUE(tok.token(0).never_sample);
  const auto seg = tok.encode_normalized("<unk>", {});
  EXPECT_EQ(seg.token_ids, (std::vector<int32_t>{1, 2, 3, 4, 5}));
}

}  // namespace
}  // namespace tat
