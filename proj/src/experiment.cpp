#include "topicnoise/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "topicnoise/agreement.hpp"
#include "topicnoise/error.hpp"
#include "topicnoise/random.hpp"

namespace topicnoise {
namespace fs = std::filesystem;
namespace {

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs fn(i) for i in [0, n) on `threads` workers. The first exception stops
// further jobs from starting and is rethrown once all workers have joined.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const unsigned count = worker_count(threads, n);
  if (count <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

std::uint64_t level_key(double level) { return static_cast<std::uint64_t>(std::llround(level * 1e6)); }

std::uint64_t corpus_fingerprint(const Corpus& corpus) {
  std::uint64_t h = fnv1a(corpus.name);
  for (const auto& doc : corpus.documents) {
    h = mix64(h ^ fnv1a(doc.id));
    for (const auto& t : doc.tokens) h = mix64(h ^ fnv1a(t));
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Identifies everything that determines a cell's records, so cell files
// from an earlier run are reused only when they would be reproduced exactly.
std::string sweep_fingerprint(const ExperimentConfig& config, const ExperimentInputs& inputs) {
  ExperimentConfig c = config;
  c.corpus_path.clear();
  c.output_dir.clear();
  c.threads = 0;
  std::uint64_t h = mix64(fnv1a(format_experiment_config(c)) ^ corpus_fingerprint(inputs.corpus));
  if (inputs.frequencies) {
    for (const auto& e : inputs.frequencies->entries) h = mix64(h ^ fnv1a(e.term) ^ mix64(e.frequency));
  }
  std::vector<std::string> stop(inputs.stopwords.begin(), inputs.stopwords.end());
  std::sort(stop.begin(), stop.end());
  for (const auto& w : stop) h = mix64(h ^ fnv1a(w));
  return hex(h);
}

struct Cell {
  NoiseKind kind;
  double level;
  std::uint64_t corpus_seed;
};

std::string cell_file_name(const Cell& cell) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s-%06llu-%llu.csv", std::string(to_string(cell.kind)).c_str(),
                static_cast<unsigned long long>(level_key(cell.level)), static_cast<unsigned long long>(cell.corpus_seed));
  return buf;
}

std::optional<std::vector<StabilityRecord>> read_cell(const fs::path& path, const std::string& fingerprint,
                                                      std::size_t expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string first;
  if (!std::getline(in, first) || first != "# fingerprint=" + fingerprint) return std::nullopt;
  std::ostringstream rest;
  rest << in.rdbuf();
  try {
    auto records = parse_records_csv(rest.str());
    if (records.size() != expected) return std::nullopt;
    return records;
  } catch (const DataError&) {
    return std::nullopt;
  }
}

void write_cell(const fs::path& path, const std::string& fingerprint, std::span<const StabilityRecord> records) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << "# fingerprint=" << fingerprint << "\n" << format_records_csv(records);
    if (!out) throw DataError("error while writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

ResultTable aggregate(std::span<const StabilityRecord> records) {
  if (records.empty()) throw DataError("cannot aggregate an empty record set");
  using Key = std::tuple<int, double, int>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& r : records) {
    groups[{static_cast<int>(r.noise_kind), r.noise_level, r.k}].push_back(r.agreement_score);
  }
  ResultTable table;
  const std::size_t size = groups.begin()->second.size();
  for (const auto& [key, scores] : groups) {
    if (scores.size() != size) throw DataError("record groups differ in size; the sweep is incomplete");
    ResultRow row;
    row.noise_kind = static_cast<NoiseKind>(std::get<0>(key));
    row.noise_level = std::get<1>(key);
    row.k = std::get<2>(key);
    row.n_runs = scores.size();
    double sum = 0.0;
    for (double s : scores) sum += s;
    row.mean_score = sum / static_cast<double>(scores.size());
    if (scores.size() > 1) {
      double ss = 0.0;
      for (double s : scores) ss += (s - row.mean_score) * (s - row.mean_score);
      row.std_dev = std::sqrt(ss / static_cast<double>(scores.size() - 1));
    }
    table.rows.push_back(row);
  }
  return table;
}

ExperimentInputs load_experiment_inputs(const ExperimentConfig& config) {
  ExperimentInputs inputs;
  inputs.corpus = config.corpus_format ? load_corpus(config.corpus_path, *config.corpus_format)
                                       : load_corpus(config.corpus_path);
  if (config.frequency_list_path) {
    FrequencyListOptions options;
    options.frequency_column = config.frequency_column;
    inputs.frequencies = load_frequency_list(*config.frequency_list_path, options);
  }
  if (config.stopwords == "default") {
    inputs.stopwords = default_stopwords();
  } else if (config.stopwords != "none") {
    inputs.stopwords = load_stopwords(config.stopwords);
  }
  return inputs;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentInputs& inputs) {
  config.validate();
  if (config.needs_frequency_list() && !inputs.frequencies) {
    throw DataError("insertion and metaphone noise need a frequency list (frequency_list_path)");
  }
  const std::vector<int> ks = config.effective_k_values();
  const auto& lda_seeds = config.lda_seeds;
  const std::size_t models_per_cell = ks.size() * lda_seeds.size();

  auto lda_config = [&](int k, std::uint64_t seed) {
    LdaConfig c = config.lda;
    c.topics = k;
    c.seed = seed;
    return c;
  };

  std::vector<Cell> cells;
  for (NoiseKind kind : config.noise_kinds) {
    for (double level : config.noise_levels) {
      for (std::uint64_t cs : config.corpus_seeds) cells.push_back({kind, level, cs});
    }
  }

  const std::string fingerprint = sweep_fingerprint(config, inputs);

  const fs::path cell_dir = config.output_dir.empty() ? fs::path{} : config.output_dir / "cells";
  if (!cell_dir.empty()) fs::create_directories(cell_dir);

  ExperimentResult result;
  std::vector<std::vector<StabilityRecord>> cell_records(cells.size());
  std::vector<char> needs_run(cells.size(), 1);
  if (!cell_dir.empty()) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (auto reused = read_cell(cell_dir / cell_file_name(cells[c]), fingerprint, models_per_cell)) {
        cell_records[c] = std::move(*reused);
        needs_run[c] = 0;
        ++result.reused_cells;
      }
    }
  }
  const bool any_to_run = std::find(needs_run.begin(), needs_run.end(), 1) != needs_run.end();

  // Clean references, one per (k, lda seed), shared by every cell.
  std::vector<std::vector<RankedTermList>> references(models_per_cell);
  if (any_to_run) {
    const Vocabulary clean_vocab = build_vocabulary(inputs.corpus, config.min_df, inputs.stopwords);
    parallel_for(models_per_cell, config.threads, [&](std::size_t j) {
      const int k = ks[j / lda_seeds.size()];
      const std::uint64_t seed = lda_seeds[j % lda_seeds.size()];
      references[j] = top_term_lists(train_lda(inputs.corpus, clean_vocab, lda_config(k, seed)), config.depth);
    });
    result.reference_trainings = models_per_cell;
  }

  std::optional<MetaphoneIndex> index;
  if (inputs.frequencies) index = build_metaphone_index(*inputs.frequencies);

  std::atomic<std::size_t> noisy_trainings{0};
  std::vector<std::size_t> pending;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (needs_run[c]) pending.push_back(c);
  }
  parallel_for(pending.size(), config.threads, [&](std::size_t p) {
    const std::size_t c = pending[p];
    const Cell& cell = cells[c];
    const NoiseSpec spec{cell.kind, cell.level,
                         derive_seed({fnv1a(to_string(cell.kind)), level_key(cell.level), cell.corpus_seed})};
    const NoisyCorpus noisy = inject_noise(inputs.corpus, spec, inputs.frequencies ? &*inputs.frequencies : nullptr,
                                           index ? &*index : nullptr);
    const double achieved = noisy.report.achieved_wer();
    const Vocabulary vocab = build_vocabulary(noisy.corpus, config.min_df, inputs.stopwords);
    std::vector<StabilityRecord> records;
    records.reserve(models_per_cell);
    for (std::size_t j = 0; j < models_per_cell; ++j) {
      const int k = ks[j / lda_seeds.size()];
      const std::uint64_t seed = lda_seeds[j % lda_seeds.size()];
      const TopicModel model = train_lda(noisy.corpus, vocab, lda_config(k, seed));
      ++noisy_trainings;
      const auto score = agreement(references[j], top_term_lists(model, config.depth)).score;
      records.push_back({cell.kind, cell.level, k, cell.corpus_seed, seed, achieved, score});
    }
    if (!cell_dir.empty()) write_cell(cell_dir / cell_file_name(cell), fingerprint, records);
    cell_records[c] = std::move(records);
  });
  result.noisy_trainings = noisy_trainings.load();

  for (auto& records : cell_records) {
    result.records.insert(result.records.end(), records.begin(), records.end());
  }
  result.table = aggregate(result.records);
  if (!config.output_dir.empty()) emit_outputs(result.table, result.records, config.output_dir);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.needs_frequency_list() && !config.frequency_list_path) {
    throw ConfigError("insertion and metaphone noise need frequency_list_path");
  }
  return run_experiment(config, load_experiment_inputs(config));
}

}  // namespace topicnoise
