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

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "tat/error.h"
#include "tat/io.h"
#include "tat/utf8.h"

namespace tat {
namespace {

[[noreturn]] void bad_field(std::string_view key, const std::string& why) {
  throw_error(ErrorCode::kValidation, std::string(key) + ": " + why);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    bad_field(key, "expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_field(key, "expected true/false, got '" + std::string(value) + "'");
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= value.size()) {
    size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    const auto item = value.substr(start, comma - start);
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

// Size with an optional k suffix: "10k" == 10000.
size_t parse_size(std::string_view key, std::string_view value) {
  if (!value.empty() && (value.back() == 'k' || value.back() == 'K')) {
    return parse_number<size_t>(key, value.substr(0, value.size() - 1)) * 1000;
  }
  return parse_number<size_t>(key, value);
}

void set_list(PipelineConfig* cfg, std::string_view key, const std::vector<std::string>& items) {
  if (key == "train.sizes") {
    cfg->sweep_sizes.clear();
    for (const auto& s : items) cfg->sweep_sizes.push_back(parse_size(key, s));
  } else if (key == "original.special_tokens") {
    cfg->original.special_tokens = items;
  } else {
    bad_field(key, "not a list field");
  }
}

void load_node(PipelineConfig* cfg, const YAML::Node& node, const std::string& prefix) {
  for (const auto& kv : node) {
    const std::string key = prefix.empty() ? kv.first.as<std::string>()
                                           : prefix + "." + kv.first.as<std::string>();
    const YAML::Node& value = kv.second;
    if (value.IsMap()) {
      load_node(cfg, value, key);
    } else if (value.IsSequence()) {
      std::vector<std::string> items;
      for (const auto& item : value) items.push_back(item.as<std::string>());
      set_list(cfg, key, items);
    } else if (value.IsNull()) {
      continue;
    } else {
      set_field(cfg, key, value.as<std::string>());
    }
  }
}

bool path_ok(const std::string& p) { return p.empty() || std::filesystem::exists(p); }

}  // namespace

ImportOptions PipelineConfig::import_options() const {
  ImportOptions opts;
  opts.format = original.format;
  opts.convention = original.convention;
  opts.special_tokens = original.special_tokens;
  opts.detect_specials = original.detect_specials;
  return opts;
}

void set_field(PipelineConfig* cfg, std::string_view key, std::string_view value) {
  try {
    if (key == "corpus.path") {
      cfg->corpus.path = std::string(value);
    } else if (key == "corpus.length_unit") {
      cfg->corpus.length_unit = parse_length_unit(value);
    } else if (key == "corpus.marker") {
      cfg->corpus.marker = std::string(value);
    } else if (key == "seed_vocab.max_piece_len") {
      cfg->seed_vocab.max_piece_len = parse_number<size_t>(key, value);
    } else if (key == "seed_vocab.seed_size") {
      if (value == "auto") {
        cfg->seed_vocab.seed_size.reset();
      } else {
        cfg->seed_vocab.seed_size = parse_size(key, value);
      }
    } else if (key == "train.target_size") {
      cfg->train.target_size = parse_size(key, value);
    } else if (key == "train.em_iters_per_round") {
      cfg->train.em_iters_per_round = parse_number<size_t>(key, value);
    } else if (key == "train.shrink_factor") {
      cfg->train.shrink_factor = parse_number<double>(key, value);
    } else if (key == "train.sizes") {
      set_list(cfg, key, split_list(value));
    } else if (key == "sampler.alpha") {
      cfg->alpha = parse_number<double>(key, value);
    } else if (key == "merge.big_score") {
      if (value == "auto") {
        cfg->merge.big_score.reset();
      } else {
        cfg->merge.big_score = parse_number<double>(key, value);
      }
    } else if (key == "merge.keep_original_scores") {
      cfg->merge.keep_original_scores = parse_bool(key, value);
    } else if (key == "original.path") {
      cfg->original.path = std::string(value);
    } else if (key == "original.format") {
      cfg->original.format = parse_original_format(value);
    } else if (key == "original.convention") {
      if (value == "auto") {
        cfg->original.convention.reset();
      } else {
        cfg->original.convention = parse_convention(value);
      }
    } else if (key == "original.special_tokens") {
      set_list(cfg, key, split_list(value));
    } else if (key == "original.detect_specials") {
      cfg->original.detect_specials = parse_bool(key, value);
    } else if (key == "embedding.path") {
      cfg->embedding.path = std::string(value);
    } else if (key == "embedding.format") {
      cfg->embedding.format = parse_matrix_format(value);
    } else if (key == "output_dir") {
      cfg->output_dir = std::string(value);
    } else if (key == "seed") {
      cfg->seed = parse_number<uint64_t>(key, value);
      cfg->train.seed = cfg->seed;
    } else if (key == "threads") {
      cfg->threads = parse_number<size_t>(key, value);
      cfg->train.threads = cfg->threads;
    } else {
      bad_field(key, "unknown field");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValidation) throw;
    bad_field(key, e.what());
  }
}

PipelineConfig parse_config(std::string_view yaml) {
  PipelineConfig cfg;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw_error(ErrorCode::kValidation, std::string("config: ") + e.what());
  }
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw_error(ErrorCode::kValidation, "config: top level must be a mapping");
  try {
    load_node(&cfg, root, "");
  } catch (const YAML::Exception& e) {
    throw_error(ErrorCode::kValidation, std::string("config: ") + e.what());
  }
  return cfg;
}

PipelineConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

std::vector<std::string> validation_errors(const PipelineConfig& cfg) {
  std::vector<std::string> errors;
  auto fail = [&errors](const std::string& field, const std::string& why) {
    errors.push_back(field + ": " + why);
  };
  if (!utf8::is_valid(cfg.corpus.marker) || utf8::length(cfg.corpus.marker) != 1) {
    fail("corpus.marker", "must be exactly one character");
  }
  if (!path_ok(cfg.corpus.path)) fail("corpus.path", "file not found: " + cfg.corpus.path);
  if (!path_ok(cfg.original.path)) fail("original.path", "file not found: " + cfg.original.path);
  if (!path_ok(cfg.embedding.path)) fail("embedding.path", "file not found: " + cfg.embedding.path);
  if (cfg.seed_vocab.max_piece_len < 1) fail("seed_vocab.max_piece_len", "must be >= 1");
  if (cfg.seed_vocab.seed_size && *cfg.seed_vocab.seed_size < 1) {
    fail("seed_vocab.seed_size", "must be >= 1");
  }
  if (cfg.train.target_size < 1) fail("train.target_size", "target_size below charset floor");
  if (cfg.train.em_iters_per_round < 1) fail("train.em_iters_per_round", "must be >= 1");
  if (!(cfg.train.shrink_factor > 0.0 && cfg.train.shrink_factor < 1.0)) {
    fail("train.shrink_factor", "must lie in (0, 1)");
  }
  for (size_t i = 0; i < cfg.sweep_sizes.size(); ++i) {
    if (cfg.sweep_sizes[i] < 1) {
      fail("train.sizes[" + std::to_string(i) + "]", "target_size below charset floor");
    }
  }
  if (!std::isfinite(cfg.alpha) || cfg.alpha < 0.0) fail("sampler.alpha", "must be finite and >= 0");
  if (cfg.merge.big_score && !(*cfg.merge.big_score > 0.0 && std::isfinite(*cfg.merge.big_score))) {
    fail("merge.big_score", "must be a positive magnitude");
  }
  if (cfg.threads < 1) fail("threads", "must be >= 1");
  if (cfg.output_dir.empty()) fail("output_dir", "must not be empty");
  return errors;
}

std::string get_field(const PipelineConfig& cfg, std::string_view key) {
  YAML::Node node = YAML::Load(config_to_yaml(cfg));
  size_t start = 0;
  while (true) {
    const size_t dot = key.find('.', start);
    const std::string part(key.substr(start, dot == std::string_view::npos ? key.npos : dot - start));
    const YAML::Node& parent = node;
    if (!parent.IsMap() || !parent[part].IsDefined()) {
      throw_error(ErrorCode::kValidation, std::string(key) + ": unknown config field");
    }
    node.reset(parent[part]);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (node.IsScalar()) return node.as<std::string>();
  if (node.IsSequence()) {
    std::string out;
    for (const auto& item : node) {
      if (!out.empty()) out += ",";
      out += item.as<std::string>();
    }
    return out;
  }
  if (node.IsNull()) return "";
  throw_error(ErrorCode::kValidation, std::string(key) + ": not a scalar field");
}

void validate(PipelineConfig* cfg) {
  if (const char* env = std::getenv("TAT_SEED"); env != nullptr && *env != '\0') {
    set_field(cfg, "seed", env);
  }
  const auto errors = validation_errors(*cfg);
  if (errors.empty()) return;
  std::string msg;
  for (const auto& e : errors) {
    if (!msg.empty()) msg += "\n";
    msg += e;
  }
  throw_error(ErrorCode::kValidation, msg);
}

std::string config_to_yaml(const PipelineConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "corpus" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "path" << YAML::Value << cfg.corpus.path;
  out << YAML::Key << "length_unit" << YAML::Value << std::string(length_unit_name(cfg.corpus.length_unit));
  out << YAML::Key << "marker" << YAML::Value << cfg.corpus.marker;
  out << YAML::EndMap;

  out << YAML::Key << "seed_vocab" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "max_piece_len" << YAML::Value << cfg.seed_vocab.max_piece_len;
  out << YAML::Key << "seed_size" << YAML::Value;
  if (cfg.seed_vocab.seed_size) {
    out << *cfg.seed_vocab.seed_size;
  } else {
    out << "auto";
  }
  out << YAML::EndMap;

  out << YAML::Key << "train" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "target_size" << YAML::Value << cfg.train.target_size;
  out << YAML::Key << "em_iters_per_round" << YAML::Value << cfg.train.em_iters_per_round;
  out << YAML::Key << "shrink_factor" << YAML::Value << format_double(cfg.train.shrink_factor);
  out << YAML::Key << "sizes" << YAML::Value << YAML::Flow << cfg.sweep_sizes;
  out << YAML::EndMap;

  out << YAML::Key << "sampler" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "alpha" << YAML::Value << format_double(cfg.alpha);
  out << YAML::EndMap;

  out << YAML::Key << "merge" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "big_score" << YAML::Value
      << (cfg.merge.big_score ? format_double(*cfg.merge.big_score) : std::string("auto"));
  out << YAML::Key << "keep_original_scores" << YAML::Value << cfg.merge.keep_original_scores;
  out << YAML::EndMap;

  static constexpr const char* kFormats[] = {"list", "tsv", "json"};
  out << YAML::Key << "original" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "path" << YAML::Value << cfg.original.path;
  out << YAML::Key << "format" << YAML::Value << kFormats[static_cast<int>(cfg.original.format)];
  out << YAML::Key << "convention" << YAML::Value
      << (cfg.original.convention ? std::string(convention_name(*cfg.original.convention))
                                  : std::string("auto"));
  out << YAML::Key << "special_tokens" << YAML::Value << YAML::Flow << cfg.original.special_tokens;
  out << YAML::Key << "detect_specials" << YAML::Value << cfg.original.detect_specials;
  out << YAML::EndMap;

  out << YAML::Key << "embedding" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "path" << YAML::Value << cfg.embedding.path;
  out << YAML::Key << "format" << YAML::Value
      << (cfg.embedding.format == MatrixFormat::kBinary ? "binary" : "text");
  out << YAML::EndMap;

  out << YAML::Key << "output_dir" << YAML::Value << cfg.output_dir;
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;
  out << YAML::Key << "threads" << YAML::Value << cfg.threads;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace tat
