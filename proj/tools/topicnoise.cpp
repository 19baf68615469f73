// topicnoise: corrupt corpora, train LDA models and measure topic stability.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "topicnoise/agreement.hpp"
#include "topicnoise/corpus.hpp"
#include "topicnoise/error.hpp"
#include "topicnoise/experiment.hpp"
#include "topicnoise/lda.hpp"
#include "topicnoise/noise.hpp"
#include "topicnoise/phonetics.hpp"
#include "topicnoise/synthetic.hpp"

namespace fs = std::filesystem;
using namespace topicnoise;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct CorpusOptions {
  std::string input;
  std::string format = "auto";
  std::size_t min_df = kDefaultMinDf;
  std::string stopwords = "default";

  void add_to(CLI::App* app, bool vocabulary) {
    app->add_option("-i,--input", input, "corpus directory or file")->required();
    app->add_option("--format", format, "auto, dir-of-txt, one-doc-per-line or tsv");
    if (vocabulary) {
      app->add_option("--min-df", min_df, "drop terms found in fewer documents");
      app->add_option("--stopwords", stopwords, "'default', 'none' or a file with one word per line");
    }
  }

  Corpus load() const { return format == "auto" ? load_corpus(input) : load_corpus(input, parse_corpus_format(format)); }

  StopwordSet stopword_set() const {
    if (stopwords == "default") return default_stopwords();
    if (stopwords == "none") return {};
    return load_stopwords(stopwords);
  }
};

// "auto": *.tsv -> tsv, *.txt -> one-doc-per-line, anything else -> directory
CorpusFormat output_format(const std::string& tag, const fs::path& path) {
  if (tag != "auto") return parse_corpus_format(tag);
  if (path.extension() == ".tsv") return CorpusFormat::tsv;
  if (path.extension() == ".txt") return CorpusFormat::one_doc_per_line;
  return CorpusFormat::dir_of_txt;
}

FrequencyList read_frequency_list(const std::string& path, std::optional<std::size_t> column) {
  FrequencyListOptions options;
  options.frequency_column = column;
  FrequencyList list = load_frequency_list(path, options);
  if (list.skipped_lines) {
    std::cerr << "warning: skipped " << list.skipped_lines << " malformed line(s) in " << path << '\n';
  }
  return list;
}

std::string csv_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic stability under simulated transcription noise"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "load a corpus and write its canonical form");
  CorpusOptions ingest_corpus;
  ingest_corpus.add_to(ingest, true);
  std::string ingest_output;
  std::string ingest_output_format = "tsv";
  ingest->add_option("-o,--output", ingest_output, "where to write the corpus");
  ingest->add_option("--output-format", ingest_output_format, "tsv, dir-of-txt or one-doc-per-line");

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "apply one kind of noise to a corpus");
  CorpusOptions corrupt_corpus;
  corrupt_corpus.add_to(corrupt, false);
  std::string kind;
  double rate = 0.0;
  std::uint64_t corrupt_seed = 1;
  std::string corrupt_freq;
  std::optional<std::size_t> corrupt_freq_column;
  std::string corrupt_output;
  std::string corrupt_output_format = "auto";
  std::string report_path;
  corrupt->add_option("--kind", kind, "deletion, insertion or metaphone")->required();
  corrupt->add_option("--rate", rate, "word error rate in [0, 0.5]")->required();
  corrupt->add_option("--seed", corrupt_seed, "random seed");
  corrupt->add_option("--frequency-list", corrupt_freq, "word frequency file (insertion, metaphone)");
  corrupt->add_option("--frequency-column", corrupt_freq_column, "1-based frequency column (default: last number)");
  corrupt->add_option("-o,--output", corrupt_output, "noisy corpus destination")->required();
  corrupt->add_option("--output-format", corrupt_output_format, "auto, tsv, dir-of-txt or one-doc-per-line");
  corrupt->add_option("--report", report_path, "append the noise report as a CSV row to this file");

  // train
  auto* train = app.add_subcommand("train", "train one LDA model and export its top terms");
  CorpusOptions train_corpus;
  train_corpus.add_to(train, true);
  LdaConfig lda;
  std::size_t train_depth = kDefaultDepth;
  std::string model_output;
  train->add_option("-k,--topics", lda.topics, "number of topics")->required();
  train->add_option("--alpha-sum", lda.alpha_sum, "sum of the symmetric document-topic prior");
  train->add_option("--beta", lda.beta, "topic-word prior");
  train->add_option("--iterations", lda.iterations, "Gibbs sweeps");
  train->add_option("--seed", lda.seed, "random seed");
  train->add_option("--depth", train_depth, "terms written per topic");
  train->add_option("-o,--output", model_output, "model file (stdout when omitted)");

  // agree
  auto* agree = app.add_subcommand("agree", "score the agreement of two model files");
  std::string model_a;
  std::string model_b;
  std::size_t agree_depth = kDefaultDepth;
  std::string detail_path;
  agree->add_option("first", model_a, "model file")->required();
  agree->add_option("second", model_b, "model file")->required();
  agree->add_option("--depth", agree_depth, "ranked-list depth");
  agree->add_option("--detail", detail_path, "write the matched pairs to this CSV file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a full stability experiment");
  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::optional<std::uint64_t> sweep_seed;
  sweep->add_option("-c,--config", config_path, "experiment config file");
  const std::pair<const char*, const char*> sweep_keys[] = {
      {"corpus_path", "--corpus"},           {"corpus_format", "--format"},
      {"noise_kinds", "--noise-kinds"},      {"noise_levels", "--noise-levels"},
      {"k_values", "--k-values"},            {"reference_k", "--reference-k"},
      {"corpus_seeds", "--corpus-seeds"},    {"lda_seeds", "--lda-seeds"},
      {"alpha_sum", "--alpha-sum"},          {"beta", "--beta"},
      {"iterations", "--iterations"},        {"depth", "--depth"},
      {"min_df", "--min-df"},                {"stopwords", "--stopwords"},
      {"frequency_list_path", "--frequency-list"}, {"frequency_column", "--frequency-column"},
      {"output_dir", "--output-dir"},        {"threads", "--threads"},
  };
  for (const auto& [key, flag] : sweep_keys) {
    sweep->add_option_function<std::string>(
        flag, [&overrides, key = std::string(key)](const std::string& v) { overrides[key] = v; },
        "overrides '" + std::string(key) + "'");
  }
  sweep->add_option("--seed", sweep_seed, "use this single seed for both corpus and LDA runs");

  // report
  auto* report = app.add_subcommand("report", "aggregate records.csv into summary and plot data");
  std::string records_path;
  std::string report_dir;
  report->add_option("--records", records_path, "records.csv from a sweep")->required();
  report->add_option("-o,--output-dir", report_dir, "output directory")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "generate a corpus with planted topics");
  SyntheticCorpusSpec spec;
  std::string synth_freq;
  std::string synth_output;
  std::string synth_format = "auto";
  synth->add_option("--frequency-list", synth_freq, "word source for the planted topics")->required();
  synth->add_option("--documents", spec.documents, "number of documents");
  synth->add_option("--topics", spec.topics, "number of planted topics");
  synth->add_option("--terms-per-topic", spec.terms_per_topic, "vocabulary size of each topic");
  synth->add_option("--doc-length", spec.doc_length, "tokens per document");
  synth->add_option("--purity", spec.purity, "share of tokens from the dominant topic");
  synth->add_option("--zipf", spec.zipf_exponent, "decay exponent of word probabilities");
  synth->add_option("--seed", spec.seed, "random seed");
  synth->add_option("-o,--output", synth_output, "corpus destination")->required();
  synth->add_option("--output-format", synth_format, "auto, tsv, dir-of-txt or one-doc-per-line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (ingest->parsed()) {
      const Corpus corpus = ingest_corpus.load();
      const Vocabulary vocab = build_vocabulary(corpus, ingest_corpus.min_df, ingest_corpus.stopword_set());
      if (!ingest_output.empty()) save_corpus(corpus, ingest_output, parse_corpus_format(ingest_output_format));
      std::cout << "documents,tokens,vocabulary\n"
                << corpus.documents.size() << "," << corpus.token_count() << "," << vocab.size() << "\n";
    } else if (corrupt->parsed()) {
      const NoiseSpec noise{parse_noise_kind(kind), rate, corrupt_seed};
      noise.validate();
      const Corpus corpus = corrupt_corpus.load();
      std::optional<FrequencyList> list;
      if (noise.kind != NoiseKind::deletion) {
        if (corrupt_freq.empty()) throw ConfigError("--frequency-list is required for " + kind + " noise");
        list = read_frequency_list(corrupt_freq, corrupt_freq_column);
      }
      const NoisyCorpus noisy = inject_noise(corpus, noise, list ? &*list : nullptr);
      save_corpus(noisy.corpus, corrupt_output, output_format(corrupt_output_format, corrupt_output));
      const std::string row = noisy.report.csv_row();
      if (!report_path.empty()) {
        const bool fresh = !fs::exists(report_path) || fs::file_size(report_path) == 0;
        std::ofstream out(report_path, std::ios::app);
        if (!out) throw DataError("cannot write " + report_path);
        if (fresh) out << NoiseReport::csv_header() << '\n';
        out << row << '\n';
      }
      std::cout << NoiseReport::csv_header() << '\n' << row << '\n';
    } else if (train->parsed()) {
      const Corpus corpus = train_corpus.load();
      const Vocabulary vocab = build_vocabulary(corpus, train_corpus.min_df, train_corpus.stopword_set());
      const TopicModel model = train_lda(corpus, vocab, lda);
      if (model_output.empty()) {
        std::cout << format_model(model, train_depth);
      } else {
        save_model(model, model_output, train_depth);
      }
    } else if (agree->parsed()) {
      if (agree_depth < 1) throw ConfigError("--depth must be at least 1");
      const TopicModel first = load_model(model_a);
      const TopicModel second = load_model(model_b);
      const AgreementResult result = agreement(first, second, agree_depth);
      if (result.truncated) std::cerr << "warning: some topics have fewer than " << agree_depth << " terms; lists were cut to the shorter length\n";
      std::cout << "model1,model2,k,depth,score\n"
                << model_a << "," << model_b << "," << first.topic_count() << "," << agree_depth << ","
                << csv_score(result.score) << "\n";
      if (!detail_path.empty()) {
        std::ofstream out(detail_path);
        if (!out) throw DataError("cannot write " + detail_path);
        out << "topic1,topic2,average_jaccard\n";
        for (std::size_t i = 0; i < result.matching.size(); ++i) {
          out << i << "," << result.matching[i] << "," << csv_score(result.per_pair[i]) << "\n";
        }
      }
    } else if (sweep->parsed()) {
      ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_experiment_config(config_path);
      for (const auto& [key, value] : overrides) set_config_value(config, key, value, fs::current_path());
      if (sweep_seed) config.corpus_seeds = config.lda_seeds = {*sweep_seed};
      if (config.corpus_path.empty()) throw ConfigError("no corpus given (corpus_path or --corpus)");
      if (config.output_dir.empty()) throw ConfigError("no output directory given (output_dir or --output-dir)");
      const ExperimentResult result = run_experiment(config);
      std::cerr << "trained " << result.reference_trainings << " reference and " << result.noisy_trainings
                << " noisy models; reused " << result.reused_cells << " cells\n";
      std::cout << format_summary_csv(result.table);
    } else if (report->parsed()) {
      const auto records = load_records_csv(records_path);
      const ResultTable table = records.empty() ? ResultTable{} : aggregate(records);
      emit_outputs(table, records, report_dir);
      std::cout << format_summary_csv(table);
    } else if (synth->parsed()) {
      const FrequencyList list = read_frequency_list(synth_freq, std::nullopt);
      const SyntheticCorpus generated = generate_synthetic_corpus(spec, synthetic_word_pool(list));
      save_corpus(generated.corpus, synth_output, output_format(synth_format, synth_output));
      for (std::size_t k = 0; k < generated.topic_terms.size(); ++k) {
        std::cout << k << ":";
        for (const auto& t : generated.topic_terms[k]) std::cout << ' ' << t;
        std::cout << '\n';
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
