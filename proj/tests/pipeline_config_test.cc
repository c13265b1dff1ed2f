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

#include "tat/pipeline_config.h"

#include <cstdlib>
#include <functional>
#include <string>

#include "gtest/gtest.h"
#include "tat/error.h"

namespace tat {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

class ConfigTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("TAT_SEED"); }
  void TearDown() override { unsetenv("TAT_SEED"); }
};

TEST_F(ConfigTest, Defaults) {
  PipelineConfig cfg = parse_config("{}");
  EXPECT_EQ(cfg.alpha, 0.5);
  EXPECT_EQ(cfg.corpus.marker, "\xE2\x96\x81");
  EXPECT_EQ(cfg.seed_size_for(1000), 5000u);
  EXPECT_FALSE(cfg.merge.big_score);
  EXPECT_EQ(get_field(cfg, "sampler.alpha"), "0.5");
  EXPECT_EQ(code_of([&] { validate(&cfg); }), ErrorCode{});
}

TEST_F(ConfigTest, ParsesNestedYaml) {
  const PipelineConfig cfg = parse_config(R"(
corpus:
  length_unit: word
train:
  target_size: 10k
  sizes: [6k, 10k, 14k, 18k]
sampler:
  alpha: 0.1
original:
  special_tokens: ["<pad>", "[CLS]"]
  convention: wordpiece
merge:
  big_score: 30
seed: 42
)");
  EXPECT_EQ(cfg.corpus.length_unit, LengthUnit::kWhitespaceWord);
  EXPECT_EQ(cfg.train.target_size, 10000u);
  EXPECT_EQ(cfg.sweep_sizes, (std::vector<size_t>{6000, 10000, 14000, 18000}));
  EXPECT_EQ(cfg.alpha, 0.1);
  EXPECT_EQ(cfg.original.special_tokens, (std::vector<std::string>{"<pad>", "[CLS]"}));
  EXPECT_EQ(cfg.original.convention, Convention::kWordPiece);
  EXPECT_EQ(cfg.merge.big_score, 30.0);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.train.seed, 42u);
}

TEST_F(ConfigTest, SetAndGetField) {
  PipelineConfig cfg;
  set_field(&cfg, "train.sizes", "6k,10k,14k,18k");
  EXPECT_EQ(cfg.sweep_sizes, (std::vector<size_t>{6000, 10000, 14000, 18000}));
  EXPECT_EQ(get_field(cfg, "train.sizes"), "6000,10000,14000,18000");
  set_field(&cfg, "merge.keep_original_scores", "true");
  EXPECT_TRUE(cfg.merge.keep_original_scores);
  set_field(&cfg, "threads", "4");
  EXPECT_EQ(cfg.train.threads, 4u);
  EXPECT_EQ(get_field(cfg, "threads"), "4");
  EXPECT_EQ(code_of([&] { set_field(&cfg, "train.nope", "1"); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([&] { set_field(&cfg, "sampler.alpha", "x"); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([&] { get_field(cfg, "nope"); }), ErrorCode::kValidation);
  EXPECT_NE(message_of([&] { set_field(&cfg, "sampler.alpha", "x"); }).find("sampler.alpha"),
            std::string::npos);
}

TEST_F(ConfigTest, ZeroTargetSizeRejected) {
  PipelineConfig cfg;
  set_field(&cfg, "train.target_size", "0");
  const std::string msg = message_of([&] { validate(&cfg); });
  EXPECT_NE(msg.find("train.target_size"), std::string::npos);
  EXPECT_NE(msg.find("target_size below charset floor"), std::string::npos);
}

TEST_F(ConfigTest, ValidationListsEveryError) {
  PipelineConfig cfg;
  cfg.alpha = -1.0;
  cfg.train.shrink_factor = 1.5;
  cfg.corpus.path = "/nonexistent/corpus.txt";
  cfg.corpus.marker = "__";
  const auto errors = validation_errors(cfg);
  EXPECT_EQ(errors.size(), 4u);
  const std::string msg = message_of([&] { validate(&cfg); });
  for (const char* field : {"sampler.alpha", "train.shrink_factor", "corpus.path", "corpus.marker"}) {
    EXPECT_NE(msg.find(field), std::string::npos) << field;
  }
}

TEST_F(ConfigTest, BadYaml) {
  EXPECT_EQ(code_of([] { parse_config("a: [1,"); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { parse_config("- 1\n- 2\n"); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { parse_config("train:\n  typo: 1\n"); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { load_config("/nonexistent.yaml"); }), ErrorCode::kIo);
}

TEST_F(ConfigTest, EnvironmentSeedWins) {
  PipelineConfig cfg;
  set_field(&cfg, "seed", "7");
  setenv("TAT_SEED", "99", 1);
  validate(&cfg);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.train.seed, 99u);
  EXPECT_EQ(cfg.sampler().seed, 99u);
  setenv("TAT_SEED", "abc", 1);
  EXPECT_EQ(code_of([&] { validate(&cfg); }), ErrorCode::kValidation);
}

TEST_F(ConfigTest, YamlEchoRoundTrips) {
  PipelineConfig cfg;
  set_field(&cfg, "train.sizes", "1k,2k");
  set_field(&cfg, "merge.big_score", "12.5");
  set_field(&cfg, "original.special_tokens", "<s>,</s>");
  set_field(&cfg, "seed_vocab.seed_size", "321");
  set_field(&cfg, "embedding.format", "text");
  set_field(&cfg, "seed", "5");
  const std::string yaml = config_to_yaml(cfg);
  const PipelineConfig back = parse_config(yaml);
  EXPECT_EQ(config_to_yaml(back), yaml);
  EXPECT_EQ(back.sweep_sizes, cfg.sweep_sizes);
  EXPECT_EQ(back.merge.big_score, 12.5);
  EXPECT_EQ(back.seed_vocab.seed_size, 321u);
  EXPECT_EQ(back.original.special_tokens, cfg.original.special_tokens);
  EXPECT_EQ(back.seed, 5u);
}

}  // namespace
}  // namespace tat
