#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "topicnoise/error.hpp"
#include "topicnoise/experiment.hpp"

namespace topicnoise {
namespace fs = std::filesystem;
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view value) {
  std::vector<T> out;
  for (auto item : split_list(value)) out.push_back(parse_number<T>(key, item));
  return out;
}

fs::path resolve(std::string_view value, const fs::path& base_dir) {
  fs::path p{std::string(value)};
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p.lexically_normal();
}

template <typename T>
std::string join_numbers(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", values[i]);
      out += buf;
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

template <typename T>
bool has_duplicates(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) != values.end();
}

}  // namespace

std::vector<int> ExperimentConfig::effective_k_values() const {
  if (!k_values.empty()) return k_values;
  std::vector<int> ks;
  for (int m : {1, 2, 3, 4, 6}) ks.push_back(m * reference_k);
  return ks;
}

bool ExperimentConfig::needs_frequency_list() const {
  return std::any_of(noise_kinds.begin(), noise_kinds.end(), [](NoiseKind k) { return k != NoiseKind::deletion; });
}

void ExperimentConfig::validate() const {
  if (noise_kinds.empty()) throw ConfigError("noise_kinds is empty");
  if (noise_levels.empty()) throw ConfigError("noise_levels is empty");
  for (double level : noise_levels) {
    if (!(level > 0.0 && level <= kMaxNoiseRate)) {
      throw ConfigError("noise level " + std::to_string(level) + " outside (0, 0.5]");
    }
  }
  if (reference_k < 2 && k_values.empty()) throw ConfigError("reference_k must be at least 2");
  for (int k : effective_k_values()) {
    if (k < 2) throw ConfigError("every k must be at least 2");
  }
  if (corpus_seeds.empty() || lda_seeds.empty()) throw ConfigError("seed lists must not be empty");
  if (has_duplicates(corpus_seeds)) throw ConfigError("corpus_seeds contains duplicates");
  if (has_duplicates(lda_seeds)) throw ConfigError("lda_seeds contains duplicates");
  if (has_duplicates(effective_k_values())) throw ConfigError("k_values contains duplicates");
  if (has_duplicates(noise_levels)) throw ConfigError("noise_levels contains duplicates");
  if (depth < 1) throw ConfigError("depth must be at least 1");
  if (min_df < 1) throw ConfigError("min_df must be at least 1");
  LdaConfig probe = lda;
  probe.topics = 2;
  probe.validate();
}

void set_config_value(ExperimentConfig& c, std::string_view key, std::string_view raw, const fs::path& base_dir) {
  const auto value = trim(raw);
  if (key == "corpus_path") {
    c.corpus_path = resolve(value, base_dir);
  } else if (key == "corpus_format") {
    if (value == "auto") c.corpus_format.reset();
    else c.corpus_format = parse_corpus_format(value);
  } else if (key == "noise_kinds") {
    c.noise_kinds.clear();
    for (auto item : split_list(value)) c.noise_kinds.push_back(parse_noise_kind(item));
  } else if (key == "noise_levels") {
    c.noise_levels = parse_list<double>(key, value);
  } else if (key == "k_values") {
    c.k_values = parse_list<int>(key, value);
  } else if (key == "reference_k") {
    c.reference_k = parse_number<int>(key, value);
  } else if (key == "corpus_seeds") {
    c.corpus_seeds = parse_list<std::uint64_t>(key, value);
  } else if (key == "lda_seeds") {
    c.lda_seeds = parse_list<std::uint64_t>(key, value);
  } else if (key == "alpha_sum") {
    c.lda.alpha_sum = parse_number<double>(key, value);
  } else if (key == "beta") {
    c.lda.beta = parse_number<double>(key, value);
  } else if (key == "iterations") {
    c.lda.iterations = parse_number<int>(key, value);
  } else if (key == "depth") {
    c.depth = parse_number<std::size_t>(key, value);
  } else if (key == "min_df") {
    c.min_df = parse_number<std::size_t>(key, value);
  } else if (key == "stopwords") {
    c.stopwords = (value == "default" || value == "none") ? std::string(value) : resolve(value, base_dir).string();
  } else if (key == "frequency_list_path") {
    if (value.empty()) c.frequency_list_path.reset();
    else c.frequency_list_path = resolve(value, base_dir);
  } else if (key == "frequency_column") {
    if (value == "auto") c.frequency_column.reset();
    else c.frequency_column = parse_number<std::size_t>(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value.empty() ? fs::path{} : resolve(value, base_dir);
  } else if (key == "threads") {
    c.threads = parse_number<unsigned>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_experiment_config(std::string_view text, const fs::path& base_dir) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto content = trim(std::string_view(line).substr(0, line.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(content.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    try {
      set_config_value(config, key, content.substr(eq + 1), base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str(), path.parent_path());
}

std::string format_experiment_config(const ExperimentConfig& c) {
  std::string kinds;
  for (std::size_t i = 0; i < c.noise_kinds.size(); ++i) {
    if (i) kinds += ", ";
    kinds += to_string(c.noise_kinds[i]);
  }
  char num[64];
  std::string out;
  out += "corpus_path = " + c.corpus_path.string() + "\n";
  out += "corpus_format = " + (c.corpus_format ? std::string(to_string(*c.corpus_format)) : std::string("auto")) + "\n";
  out += "noise_kinds = " + kinds + "\n";
  out += "noise_levels = " + join_numbers(c.noise_levels) + "\n";
  out += "reference_k = " + std::to_string(c.reference_k) + "\n";
  out += "k_values = " + join_numbers(c.k_values) + "\n";
  out += "corpus_seeds = " + join_numbers(c.corpus_seeds) + "\n";
  out += "lda_seeds = " + join_numbers(c.lda_seeds) + "\n";
  std::snprintf(num, sizeof num, "%.17g", c.lda.alpha_sum);
  out += std::string("alpha_sum = ") + num + "\n";
  std::snprintf(num, sizeof num, "%.17g", c.lda.beta);
  out += std::string("beta = ") + num + "\n";
  out += "iterations = " + std::to_string(c.lda.iterations) + "\n";
  out += "depth = " + std::to_string(c.depth) + "\n";
  out += "min_df = " + std::to_string(c.min_df) + "\n";
  out += "stopwords = " + c.stopwords + "\n";
  out += "frequency_list_path = " + (c.frequency_list_path ? c.frequency_list_path->string() : std::string()) + "\n";
  out += "frequency_column = " + (c.frequency_column ? std::to_string(*c.frequency_column) : std::string("auto")) + "\n";
  out += "output_dir = " + c.output_dir.string() + "\n";
  out += "threads = " + std::to_string(c.threads) + "\n";
  return out;
}

}  // namespace topicnoise
