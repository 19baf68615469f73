#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topicnoise/corpus.hpp"
#include "topicnoise/lda.hpp"
#include "topicnoise/noise.hpp"
#include "topicnoise/phonetics.hpp"

namespace topicnoise {

/// Everything a stability sweep needs. Loaded from a flat "key = value"
/// file (see parse_experiment_config) or filled in directly.
struct ExperimentConfig {
  std::filesystem::path corpus_path;
  std::optional<CorpusFormat> corpus_format;  ///< detected from the path when unset
  std::vector<NoiseKind> noise_kinds{NoiseKind::deletion, NoiseKind::insertion, NoiseKind::metaphone};
  std::vector<double> noise_levels{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};
  int reference_k = 5;
  std::vector<int> k_values;  ///< {1, 2, 3, 4, 6} x reference_k when empty
  std::vector<std::uint64_t> corpus_seeds{1, 2, 3, 4, 5};
  std::vector<std::uint64_t> lda_seeds{1, 2, 3, 4, 5};
  LdaConfig lda;  ///< topics and seed are overridden per run
  std::size_t depth = kDefaultDepth;
  std::size_t min_df = kDefaultMinDf;
  std::string stopwords = "default";  ///< "default", "none" or a file path
  std::optional<std::filesystem::path> frequency_list_path;
  std::optional<std::size_t> frequency_column;
  std::filesystem::path output_dir;  ///< nothing is written when empty
  unsigned threads = 0;              ///< 0 means one per hardware thread

  std::vector<int> effective_k_values() const;
  bool needs_frequency_list() const;
  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// Parses the flat config format: one "key = value" per line, '#' comments,
/// comma-separated lists. Unknown keys are rejected. Relative paths are
/// resolved against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Canonical text for a config; parsing it back yields the same config.
std::string format_experiment_config(const ExperimentConfig& config);

/// Applies one "key = value" assignment, as in the config file.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value,
                      const std::filesystem::path& base_dir = {});

struct StabilityRecord {
  NoiseKind noise_kind = NoiseKind::deletion;
  double noise_level = 0.0;
  int k = 0;
  std::uint64_t corpus_seed = 0;
  std::uint64_t lda_seed = 0;
  double achieved_wer = 0.0;
  double agreement_score = 0.0;

  bool operator==(const StabilityRecord&) const = default;
};

struct ResultRow {
  NoiseKind noise_kind = NoiseKind::deletion;
  double noise_level = 0.0;
  int k = 0;
  double mean_score = 0.0;
  double std_dev = 0.0;  ///< sample standard deviation, 0 for a single run
  std::size_t n_runs = 0;

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  bool operator==(const ResultTable&) const = default;
};

/// Groups records by (kind, level, k) and reports mean and sample standard
/// deviation. Rows come out ordered by kind, level and k. Throws DataError
/// on empty input or when groups differ in size.
ResultTable aggregate(std::span<const StabilityRecord> records);

/// In-memory inputs of a sweep.
struct ExperimentInputs {
  Corpus corpus;
  std::optional<FrequencyList> frequencies;
  StopwordSet stopwords;
};

struct ExperimentResult {
  std::vector<StabilityRecord> records;
  ResultTable table;
  std::size_t reference_trainings = 0;
  std::size_t noisy_trainings = 0;
  std::size_t reused_cells = 0;
};

/// Loads the corpus, frequency list and stopwords named by the config.
ExperimentInputs load_experiment_inputs(const ExperimentConfig& config);

/// Trains one clean reference model per (k, lda seed), then for every
/// (kind, level, corpus seed) cell corrupts the corpus and scores a model
/// per (k, lda seed) against the reference with the same k and seed. When
/// config.output_dir is set, each finished cell is written under
/// output_dir/cells (and reused by later runs with the same fingerprint)
/// before the merged outputs are emitted.
ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentInputs& inputs);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes records.csv, summary.csv and plot_<kind>.csv (one column per k)
/// into `dir`, creating it if needed.
void emit_outputs(const ResultTable& table, std::span<const StabilityRecord> records, const std::filesystem::path& dir);

std::string format_records_csv(std::span<const StabilityRecord> records);
std::string format_summary_csv(const ResultTable& table);
std::vector<StabilityRecord> parse_records_csv(std::string_view text);
ResultTable parse_summary_csv(std::string_view text);
std::vector<StabilityRecord> load_records_csv(const std::filesystem::path& path);
ResultTable load_summary_csv(const std::filesystem::path& path);

/// Values as they appear after a trip through summary.csv (6 decimals).
ResultTable round_for_csv(const ResultTable& table);

}  // namespace topicnoise
