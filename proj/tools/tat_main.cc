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

// Command-line front end. Every subcommand goes through the C API.
//
//   tat train     --config run.yaml --size 8000
//   tat merge     --config run.yaml --task tat_out/vocab.tsv
//   tat encode    --vocab tat_out/merged.json < in.txt > ids.txt
//   tat sample    --vocab tat_out/merged.json --alpha 0.1 --seed 7 < in.txt
//   tat decode    --vocab tat_out/merged.json < ids.txt
//   tat map-embed --config run.yaml --merged tat_out/merged.json
//   tat stats     --vocab tat_out/merged.json --constitution ids.txt
//   tat sweep     --config run.yaml --sizes 1k,2k,4k
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tat/c_api.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

int exit_code_for(tat_status s) {
  switch (s) {
    case TAT_OK:
      return kExitOk;
    case TAT_ERR_VALIDATION:
    case TAT_ERR_INVALID_ARGUMENT:
    case TAT_ERR_CONFIG:
      return kExitUsage;
    case TAT_ERR_INTERNAL:
      return kExitInternal;
    default:
      return kExitData;
  }
}

// Carries a failed status out of a subcommand.
struct CommandError {
  tat_status status;
  std::string message;
};

void check(tat_status s) {
  if (s != TAT_OK) throw CommandError{s, tat_last_error_message()};
}

[[noreturn]] void usage_error(const std::string& message) {
  throw CommandError{TAT_ERR_INVALID_ARGUMENT, message};
}

struct ConfigDeleter {
  void operator()(tat_config* c) const { tat_config_free(c); }
};
struct TokenizerDeleter {
  void operator()(tat_tokenizer* t) const { tat_tokenizer_free(t); }
};
struct SegDeleter {
  void operator()(tat_segmentation* s) const { tat_segmentation_free(s); }
};
struct SegListDeleter {
  void operator()(tat_segmentation_list* s) const { tat_segmentation_list_free(s); }
};
using ConfigPtr = std::unique_ptr<tat_config, ConfigDeleter>;
using TokenizerPtr = std::unique_ptr<tat_tokenizer, TokenizerDeleter>;
using SegPtr = std::unique_ptr<tat_segmentation, SegDeleter>;
using SegListPtr = std::unique_ptr<tat_segmentation_list, SegListDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  tat_string_free(s);
  return out;
}

// Writes `content` to `path` via rename so readers never see partial files.
void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw CommandError{TAT_ERR_IO, "cannot write " + path};
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw CommandError{TAT_ERR_IO, "cannot write " + path + ": " + ec.message()};
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::string line;
  if (path.empty() || path == "-") {
    while (std::getline(std::cin, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
    return lines;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{TAT_ERR_IO, "cannot open " + path};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Output goes to a file written atomically at the end, or streams to
// stdout line by line.
class LineSink {
 public:
  explicit LineSink(std::string path) : path_(std::move(path)) {}

  void write(const std::string& line) {
    if (to_stdout()) {
      std::cout << line << '\n';
    } else {
      buffer_ += line;
      buffer_ += '\n';
    }
  }

  void finish() {
    if (to_stdout()) {
      std::cout.flush();
    } else {
      write_atomically(path_, buffer_);
    }
  }

 private:
  bool to_stdout() const { return path_.empty() || path_ == "-"; }

  std::string path_;
  std::string buffer_;
};

// Options shared by the subcommands that read a config.
struct ConfigOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;  // config key -> value

  void add(CLI::App* app) {
    app->add_option("--config", config_path, "YAML config file");
    app->add_option("--set", sets, "Override a config field, key=value")->take_all();
  }

  // Flag bound to a config key; only applied when given.
  void bind(CLI::App* app, const std::string& name, const std::string& key,
            const std::string& help) {
    app->add_option_function<std::string>(
        name, [this, key](const std::string& v) { flags[key] = v; }, help);
  }

  ConfigPtr load() const {
    tat_config* raw = nullptr;
    if (config_path.empty()) {
      check(tat_config_new(&raw));
    } else {
      check(tat_config_load(config_path.c_str(), &raw));
    }
    ConfigPtr cfg(raw);
    for (const auto& [key, value] : flags) check(tat_config_set(cfg.get(), key.c_str(), value.c_str()));
    for (const auto& kv : sets) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos) usage_error("--set expects key=value, got '" + kv + "'");
      check(tat_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    return cfg;
  }
};

struct EncodeFlags {
  ConfigOptions cfg;  // --alpha and --seed are bound to sampler.alpha and seed
  std::string vocab;
  std::string input;
  std::string output;
  std::string mode = "viterbi";
  bool pieces = false;
  std::optional<std::string> unk;
  size_t nbest = 0;
};

std::string config_value(const tat_config* cfg, const char* key) {
  char* raw = nullptr;
  check(tat_config_get(cfg, key, &raw));
  return take_string(raw);
}

// Loads and validates the config, then reads back the sampler settings so
// config values, flags and TAT_SEED resolve exactly as for every other
// subcommand.
ConfigPtr load_validated(const ConfigOptions& options) {
  ConfigPtr cfg = options.load();
  check(tat_config_validate(cfg.get()));
  return cfg;
}

void apply_sampler(const tat_config* cfg, tat_encode_options* opts) {
  opts->alpha = std::stod(config_value(cfg, "sampler.alpha"));
  opts->seed = std::stoull(config_value(cfg, "seed"));
}

std::string default_path(const tat_config* cfg, const std::string& given, const char* name) {
  if (!given.empty()) return given;
  return (std::filesystem::path(config_value(cfg, "output_dir")) / name).string();
}

TokenizerPtr load_tokenizer(const std::string& path) {
  if (path.empty()) usage_error("--vocab is required");
  tat_tokenizer* raw = nullptr;
  check(tat_tokenizer_load(path.c_str(), &raw));
  return TokenizerPtr(raw);
}

std::string render(const tat_segmentation* seg, bool pieces) {
  std::string line;
  const size_t n = tat_segmentation_size(seg);
  const int32_t* ids = tat_segmentation_ids(seg);
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) line += ' ';
    line += pieces ? std::string(tat_segmentation_piece(seg, i)) : std::to_string(ids[i]);
  }
  return line;
}

json run_encode(const EncodeFlags& f, bool sample_default) {
  const ConfigPtr cfg = load_validated(f.cfg);
  const TokenizerPtr tok = load_tokenizer(default_path(cfg.get(), f.vocab, "merged.json"));
  tat_encode_options opts;
  tat_encode_options_init(&opts);
  apply_sampler(cfg.get(), &opts);
  std::string mode = f.mode;
  if (sample_default && mode == "viterbi") mode = "sample";
  if (mode == "sample") {
    opts.mode = TAT_MODE_SAMPLE;
  } else if (mode != "viterbi") {
    usage_error("--mode must be viterbi or sample");
  }
  if (f.unk) {
    int32_t id = -1;
    check(tat_tokenizer_find(tok.get(), f.unk->c_str(), &id));
    opts.unk_id = id;
  }

  const auto lines = read_lines(f.input);
  LineSink sink(f.output);
  size_t n_tokens = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (f.nbest > 0) {
      tat_segmentation_list* raw = nullptr;
      check(tat_nbest(tok.get(), lines[i].c_str(), f.nbest, &raw));
      const SegListPtr list(raw);
      std::string line;
      for (size_t k = 0; k < tat_segmentation_list_size(list.get()); ++k) {
        if (k > 0) line += '\t';
        line += render(tat_segmentation_list_get(list.get(), k), f.pieces);
      }
      sink.write(line);
      continue;
    }
    opts.draw_index = i;
    tat_segmentation* raw = nullptr;
    check(tat_encode(tok.get(), lines[i].c_str(), &opts, &raw));
    const SegPtr seg(raw);
    n_tokens += tat_segmentation_size(seg.get());
    sink.write(render(seg.get(), f.pieces));
  }
  sink.finish();
  return {{"command", sample_default ? "sample" : "encode"},
          {"mode", mode},
          {"alpha", opts.alpha},
          {"seed", opts.seed},
          {"lines", lines.size()},
          {"tokens", n_tokens}};
}

std::vector<int32_t> parse_ids(const std::string& line) {
  std::vector<int32_t> ids;
  std::istringstream in(line);
  std::string word;
  while (in >> word) {
    try {
      size_t used = 0;
      const long v = std::stol(word, &used);
      if (used != word.size() || v < INT32_MIN || v > INT32_MAX) throw std::out_of_range(word);
      ids.push_back(static_cast<int32_t>(v));
    } catch (const std::exception&) {
      throw CommandError{TAT_ERR_FORMAT, "not a token id: '" + word + "'"};
    }
  }
  return ids;
}

json run_decode(const ConfigOptions& options, const std::string& vocab, const std::string& input,
               const std::string& output) {
  const ConfigPtr cfg = load_validated(options);
  const TokenizerPtr tok = load_tokenizer(default_path(cfg.get(), vocab, "merged.json"));
  const auto lines = read_lines(input);
  LineSink sink(output);
  for (const auto& line : lines) {
    const auto ids = parse_ids(line);
    char* text = nullptr;
    check(tat_decode(tok.get(), ids.data(), ids.size(), &text));
    sink.write(take_string(text));
  }
  sink.finish();
  return {{"command", "decode"}, {"lines", lines.size()}};
}

struct StatsFlags {
  ConfigOptions cfg;
  std::string vocab;
  std::string efficiency;
  std::string constitution;
  std::optional<size_t> buckets;
  std::string length_unit = "char";
  std::string mode = "viterbi";
};

json run_stats(const StatsFlags& f) {
  if (f.efficiency.empty() && f.constitution.empty() && !f.buckets) {
    usage_error("stats needs --efficiency, --constitution or --buckets");
  }
  const ConfigPtr cfg = load_validated(f.cfg);
  const TokenizerPtr tok = load_tokenizer(default_path(cfg.get(), f.vocab, "merged.json"));
  json out = {{"command", "stats"}};
  if (!f.efficiency.empty()) {
    tat_encode_options opts;
    tat_encode_options_init(&opts);
    apply_sampler(cfg.get(), &opts);
    if (f.mode == "sample") {
      opts.mode = TAT_MODE_SAMPLE;
    } else if (f.mode != "viterbi") {
      usage_error("--mode must be viterbi or sample");
    }
    std::vector<std::string> texts;
    for (auto& line : read_lines(f.efficiency)) {
      if (line.find_first_not_of(" \t") != std::string::npos) texts.push_back(std::move(line));
    }
    std::vector<const char*> ptrs;
    for (const auto& t : texts) ptrs.push_back(t.c_str());
    char* raw = nullptr;
    check(tat_stats_efficiency(tok.get(), ptrs.data(), ptrs.size(), &opts, f.length_unit.c_str(),
                               &raw));
    out["efficiency"] = json::parse(take_string(raw));
  }
  if (!f.constitution.empty()) {
    std::vector<int32_t> ids;
    std::vector<size_t> lengths;
    for (const auto& line : read_lines(f.constitution)) {
      const auto row = parse_ids(line);
      ids.insert(ids.end(), row.begin(), row.end());
      lengths.push_back(row.size());
    }
    char* raw = nullptr;
    check(tat_stats_constitution(tok.get(), ids.data(), lengths.data(), lengths.size(), &raw));
    out["constitution"] = json::parse(take_string(raw));
  }
  if (f.buckets) {
    char* raw = nullptr;
    check(tat_stats_length_buckets(tok.get(), *f.buckets, &raw));
    out["buckets"] = json::parse(take_string(raw));
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// Plain aligned tables; --json gives the same numbers at full precision.
void print_stats_tables(const json& report, std::ostream& os) {
  bool first = true;
  auto section = [&](const char* title) {
    if (!first) os << "\n";
    first = false;
    os << title << "\n";
  };
  if (report.contains("efficiency")) {
    const json& e = report["efficiency"];
    section("efficiency");
    const std::string unit = "len_units(" + e["length_unit"].get<std::string>() + ")";
    os << std::left << std::setw(10) << "n_texts" << std::setw(12) << "n_tok" << std::setw(16) << unit
       << std::setw(14) << "len_per_tok" << "wall_centisec\n";
    os << std::setw(10) << e["n_texts"].get<size_t>() << std::setw(12) << fixed(e["n_tok"], 3)
       << std::setw(16) << fixed(e["len_units"], 3) << std::setw(14) << fixed(e["len_per_tok"], 4)
       << fixed(e["wall_centisec"], 4) << "\n";
  }
  if (report.contains("constitution")) {
    const json& c = report["constitution"];
    section("constitution");
    os << std::left << std::setw(14) << "overlap" << std::setw(14) << "non_overlap" << std::setw(14)
       << "original" << "total_chars\n";
    os << std::setw(14) << fixed(c["overlap_frac"], 4) << std::setw(14) << fixed(c["non_overlap_frac"], 4)
       << std::setw(14) << fixed(c["original_frac"], 4) << c["total_chars"].get<size_t>() << "\n";
  }
  if (report.contains("buckets")) {
    section("length buckets");
    for (const json& row : report["buckets"]) {
      os << "(" << row["lo"].get<size_t>() << "," << row["hi"].get<size_t>() << "]";
      for (const json& t : row["tokens"]) os << "  " << t["token"].get<std::string>();
      os << "\n";
    }
  }
}

void print_summary(const json& summary, bool as_json) {
  if (as_json) {
    std::cout << summary.dump() << std::endl;
    return;
  }
  for (const auto& [key, value] : summary.items()) {
    if (key == "log" || key == "rows" || key == "warnings") continue;
    std::cerr << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task-adaptive tokenizer toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tat_version()));

  bool as_json = false;
  std::string output_dir;

  // train
  ConfigOptions train_cfg;
  auto* train = app.add_subcommand("train", "Train a task vocabulary from a corpus");
  train_cfg.add(train);
  train_cfg.bind(train, "--corpus", "corpus.path", "Corpus, one sentence per line");
  train_cfg.bind(train, "--size", "train.target_size", "Target vocabulary size");
  train_cfg.bind(train, "--seed-size", "seed_vocab.seed_size", "Seed vocabulary size or auto");
  train_cfg.bind(train, "--max-piece-len", "seed_vocab.max_piece_len", "Longest seed piece");
  train_cfg.bind(train, "--em-iters", "train.em_iters_per_round", "EM iterations per round");
  train_cfg.bind(train, "--shrink", "train.shrink_factor", "Per-round shrink factor");
  train_cfg.bind(train, "--length-unit", "corpus.length_unit", "char or word");
  train_cfg.bind(train, "--marker", "corpus.marker", "Boundary marker character");
  train_cfg.bind(train, "--seed", "seed", "Random seed");
  train_cfg.bind(train, "--threads", "threads", "Worker threads");
  train->add_option("--output-dir", output_dir, "Output directory");
  train->add_flag("--json", as_json, "JSON summary on stdout");

  // merge
  ConfigOptions merge_cfg;
  std::string task_vocab;
  auto* merge = app.add_subcommand("merge", "Merge a task vocabulary into an original one");
  merge_cfg.add(merge);
  merge->add_option("--task", task_vocab, "Task vocabulary TSV (default <output-dir>/vocab.tsv)");
  merge_cfg.bind(merge, "--original", "original.path", "Original vocabulary file");
  merge_cfg.bind(merge, "--original-format", "original.format", "list, tsv or json");
  merge_cfg.bind(merge, "--convention", "original.convention",
                 "sentencepiece, byte_level, wordpiece or auto");
  merge_cfg.bind(merge, "--special-tokens", "original.special_tokens", "Comma separated");
  merge_cfg.bind(merge, "--big-score", "merge.big_score", "Score magnitude for original tokens");
  merge->add_flag_function(
      "--keep-original-scores",
      [&merge_cfg](int64_t) { merge_cfg.flags["merge.keep_original_scores"] = "true"; },
      "Keep scores that come with the original vocabulary");
  merge->add_option("--output-dir", output_dir, "Output directory");
  merge->add_flag("--json", as_json, "JSON summary on stdout");

  // encode / sample
  EncodeFlags enc;
  auto add_encode = [&](CLI::App* cmd) {
    enc.cfg.add(cmd);
    cmd->add_option("--vocab", enc.vocab,
                    "Merged vocabulary JSON or TSV vocabulary (default <output_dir>/merged.json)");
    cmd->add_option("--input,-i", enc.input, "Input text (default stdin)");
    cmd->add_option("--output,-o", enc.output, "Output file (default stdout)");
    enc.cfg.bind(cmd, "--alpha", "sampler.alpha", "Sampling exponent");
    enc.cfg.bind(cmd, "--seed", "seed", "Sampling seed");
    cmd->add_flag("--pieces", enc.pieces, "Print pieces instead of ids");
    cmd->add_option("--unk-passthrough", enc.unk,
                    "Emit this token for characters the vocabulary cannot cover")
        ->expected(0, 1)
        ->default_str("<unk>");
    cmd->add_flag("--json", as_json, "JSON summary on stdout after the output");
  };
  auto* encode = app.add_subcommand("encode", "Segment text, one line per input line");
  add_encode(encode);
  encode->add_option("--mode", enc.mode, "viterbi or sample")
      ->check(CLI::IsMember({"viterbi", "sample"}));
  encode->add_option("--nbest", enc.nbest, "Print the n best segmentations, tab separated");
  auto* sample = app.add_subcommand("sample", "Sample one segmentation per input line");
  add_encode(sample);

  // decode
  ConfigOptions dec_cfg;
  std::string dec_vocab, dec_input, dec_output;
  auto* decode = app.add_subcommand("decode", "Token ids back to text");
  dec_cfg.add(decode);
  decode->add_option("--vocab", dec_vocab,
                     "Merged vocabulary JSON or TSV vocabulary (default <output_dir>/merged.json)");
  decode->add_option("--input,-i", dec_input, "Input ids (default stdin)");
  decode->add_option("--output,-o", dec_output, "Output file (default stdout)");
  decode->add_flag("--json", as_json, "JSON summary on stdout after the output");

  // map-embed
  ConfigOptions map_cfg;
  std::string merged_path;
  auto* map_embed = app.add_subcommand("map-embed", "Extend an embedding matrix to a merged vocabulary");
  map_cfg.add(map_embed);
  map_embed->add_option("--merged", merged_path, "Merged vocabulary (default <output-dir>/merged.json)");
  map_cfg.bind(map_embed, "--embedding", "embedding.path", "Original embedding matrix");
  map_cfg.bind(map_embed, "--embedding-format", "embedding.format", "binary or text");
  map_embed->add_option("--output-dir", output_dir, "Output directory");
  map_embed->add_flag("--json", as_json, "JSON summary on stdout");

  // stats
  StatsFlags st;
  auto* stats = app.add_subcommand("stats", "Efficiency, constitution and length-bucket reports");
  st.cfg.add(stats);
  stats->add_option("--vocab", st.vocab,
                    "Merged vocabulary JSON or TSV vocabulary (default <output_dir>/merged.json)");
  stats->add_option("--efficiency", st.efficiency, "Text file to encode and time");
  stats->add_option("--constitution", st.constitution, "File of encoded id lines");
  stats->add_option("--buckets", st.buckets, "Top-k tokens per length bucket");
  stats->add_option("--length-unit", st.length_unit, "char or word")
      ->check(CLI::IsMember({"char", "word"}));
  stats->add_option("--mode", st.mode, "viterbi or sample")->check(CLI::IsMember({"viterbi", "sample"}));
  st.cfg.bind(stats, "--alpha", "sampler.alpha", "Sampling exponent");
  st.cfg.bind(stats, "--seed", "seed", "Sampling seed");
  stats->add_flag("--json", as_json, "Print the report as JSON instead of tables");

  // sweep
  ConfigOptions sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "Train and merge at several vocabulary sizes");
  sweep_cfg.add(sweep);
  sweep_cfg.bind(sweep, "--sizes", "train.sizes", "Comma separated sizes, e.g. 1k,2k,4k");
  sweep_cfg.bind(sweep, "--corpus", "corpus.path", "Corpus, one sentence per line");
  sweep_cfg.bind(sweep, "--original", "original.path", "Original vocabulary file");
  sweep_cfg.bind(sweep, "--original-format", "original.format", "list, tsv or json");
  sweep_cfg.bind(sweep, "--length-unit", "corpus.length_unit", "char or word");
  sweep_cfg.bind(sweep, "--seed", "seed", "Random seed");
  sweep_cfg.bind(sweep, "--threads", "threads", "Worker threads");
  sweep->add_option("--output-dir", output_dir, "Output directory");
  sweep->add_flag("--json", as_json, "JSON summary on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ios::sync_with_stdio(false);
    json summary;
    const char* dir = output_dir.empty() ? nullptr : output_dir.c_str();
    if (train->parsed()) {
      const ConfigPtr cfg = train_cfg.load();
      char* raw = nullptr;
      check(tat_train(cfg.get(), dir, &raw));
      summary = json::parse(take_string(raw));
    } else if (merge->parsed()) {
      const ConfigPtr cfg = load_validated(merge_cfg);
      if (!output_dir.empty()) check(tat_config_set(cfg.get(), "output_dir", output_dir.c_str()));
      task_vocab = default_path(cfg.get(), task_vocab, "vocab.tsv");
      char* raw = nullptr;
      check(tat_merge(cfg.get(), task_vocab.c_str(), dir, &raw));
      summary = json::parse(take_string(raw));
    } else if (encode->parsed()) {
      summary = run_encode(enc, false);
    } else if (sample->parsed()) {
      summary = run_encode(enc, true);
    } else if (decode->parsed()) {
      summary = run_decode(dec_cfg, dec_vocab, dec_input, dec_output);
    } else if (map_embed->parsed()) {
      const ConfigPtr cfg = map_cfg.load();
      if (!output_dir.empty()) check(tat_config_set(cfg.get(), "output_dir", output_dir.c_str()));
      merged_path = default_path(cfg.get(), merged_path, "merged.json");
      char* raw = nullptr;
      check(tat_map_embed(cfg.get(), merged_path.c_str(), dir, &raw));
      summary = json::parse(take_string(raw));
    } else if (stats->parsed()) {
      const json report = run_stats(st);
      if (as_json) {
        std::cout << report.dump(1) << std::endl;
      } else {
        print_stats_tables(report, std::cout);
      }
      return kExitOk;
    } else if (sweep->parsed()) {
      const ConfigPtr cfg = sweep_cfg.load();
      char* raw = nullptr;
      check(tat_sweep(cfg.get(), dir, &raw));
      summary = json::parse(take_string(raw));
    }
    print_summary(summary, as_json);
    return kExitOk;
  } catch (const CommandError& e) {
    std::cerr << "tat: " << tat_status_name(e.status) << ": " << e.message << std::endl;
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "tat: InternalError: " << e.what() << std::endl;
    return kExitInternal;
  }
}
