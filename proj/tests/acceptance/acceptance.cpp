// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criterion 7 needs a user-supplied labelled news corpus
// (TOPICNOISE_BBC_CORPUS) and is reported as SKIP without one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../planted_topics.hpp"
#include "topicnoise/agreement.hpp"
#include "topicnoise/experiment.hpp"
#include "topicnoise/lda.hpp"
#include "topicnoise/log.hpp"
#include "topicnoise/noise.hpp"
#include "topicnoise/phonetics.hpp"
#include "topicnoise/synthetic.hpp"

namespace fs = std::filesystem;
using namespace topicnoise;

namespace {

// Pinned tolerances.
constexpr double kOracleTolerance = 1e-12;
constexpr double kOracleSeconds = 10.0;
constexpr double kWerSeconds = 5.0;
constexpr double kRecoveryThreshold = 0.9;
constexpr double kRecoverySeconds = 30.0;
constexpr double kDeletionMaxDrop = 0.10;
constexpr double kSevereMinDrop = 0.15;
constexpr double kTrendSeconds = 30.0 * 60.0;

enum class Outcome { pass, fail, skip };

struct Check {
  Outcome outcome = Outcome::pass;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
    if (!ok) outcome = Outcome::fail;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

fs::path data_file(const char* name) { return fs::path(TOPICNOISE_DATA_DIR) / name; }

const FrequencyList& english() {
  static const FrequencyList list = load_frequency_list(data_file("english_freq.tsv"));
  return list;
}

// Prefix-by-prefix Jaccard mean with each prefix rebuilt from scratch.
double prefix_oracle(const RankedTermList& a, const RankedTermList& b) {
  const std::size_t d = std::min(a.size(), b.size());
  double sum = 0;
  for (std::size_t t = 1; t <= d; ++t) {
    const std::set<Term> pa(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(t));
    const std::set<Term> pb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(t));
    std::size_t inter = 0;
    for (const auto& x : pa) inter += pb.count(x);
    sum += static_cast<double>(inter) / static_cast<double>(pa.size() + pb.size() - inter);
  }
  return sum / static_cast<double>(d);
}

Check metric_oracles() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 gen(20240601);
  std::uniform_int_distribution<std::size_t> len(3, 25);
  std::uniform_int_distribution<int> pool_size(25, 50);
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int pool = pool_size(gen);
    auto draw = [&] {
      std::vector<int> ids(static_cast<std::size_t>(pool));
      std::iota(ids.begin(), ids.end(), 0);
      std::shuffle(ids.begin(), ids.end(), gen);
      RankedTermList out;
      const std::size_t n = len(gen);
      for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(ids[i]));
      return out;
    };
    const auto a = draw();
    const auto b = draw();
    worst = std::max(worst, std::abs(average_jaccard(a, b) - prefix_oracle(a, b)));
  }
  c.require(worst <= kOracleTolerance, "500 AJ pairs, max |diff| " + fmt("%.2e", worst));

  std::uniform_real_distribution<double> u(0, 1);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 7;
    SimilarityMatrix s(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) s(i, j) = u(gen);
    }
    const auto match = hungarian_match(s);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1;
    std::vector<int> best_perm;
    do {
      double sum = 0;
      for (int i = 0; i < k; ++i) sum += s(i, perm[static_cast<std::size_t>(i)]);
      if (sum > best) {
        best = sum;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (match.matching != best_perm || match.score != best / k) ++mismatches;
  }
  c.require(mismatches == 0, "200 matchings, " + std::to_string(mismatches) + " differ from exhaustive search");
  const double elapsed = seconds_since(start);
  c.require(elapsed < kOracleSeconds, fmt("%.2fs", elapsed));
  return c;
}

Check endpoints() {
  Check c;
  const auto planted = topicnoise::testing::planted_corpus(3, 30, 40, 10, 3);
  LdaConfig lda;
  lda.topics = 3;
  lda.iterations = 200;
  const auto model = train_lda(planted.corpus, build_vocabulary(planted.corpus, 1, {}), lda);
  Corpus renamed = planted.corpus;
  for (auto& doc : renamed.documents) {
    for (auto& t : doc.tokens) t = "other" + t;
  }
  const auto other = train_lda(renamed, build_vocabulary(renamed, 1, {}), lda);
  const double same = agreement(model, model).score;
  const double disjoint = agreement(model, other).score;
  c.require(same == 1.0, "identical " + fmt("%.17g", same));
  c.require(disjoint == 0.0, "disjoint " + fmt("%.17g", disjoint));
  return c;
}

Check phonetic_groups() {
  Check c;
  auto group = [&](std::initializer_list<const char*> words, const std::string& code) {
    std::string got;
    bool ok = true;
    for (const char* w : words) {
      const auto primary = double_metaphone(w).primary;
      got += std::string(got.empty() ? "" : " ") + w + "=" + primary;
      ok = ok && primary == code;
    }
    c.require(ok, got);
  };
  group({"industry", "units", "induced", "wound"}, "ANTS");
  group({"grateful", "creative", "Cardiff"}, "KRTF");

  // "We are hoping to understand the creative industry", marked positions 6 and 7.
  const std::vector<Term> fragment = tokenize("We are hoping to understand the creative industry");
  const auto index = build_metaphone_index(english());
  bool fragment_ok = fragment.size() == 8;
  std::set<std::string> seen;
  for (std::uint64_t seed = 1; seed <= 50 && fragment_ok; ++seed) {
    Rng rng(seed);
    std::vector<Term> out = fragment;
    for (std::size_t pos : {std::size_t{6}, std::size_t{7}}) {
      const auto replacement = sample_sound_alike(out[pos], index, rng);
      if (!replacement) {
        fragment_ok = false;
        break;
      }
      const auto bucket = index.sound_alikes(out[pos]);
      const bool in_bucket = std::any_of(bucket.begin(), bucket.end(), [&](const auto& e) { return e.term == *replacement; });
      fragment_ok = fragment_ok && in_bucket && *replacement != out[pos] &&
                    double_metaphone(*replacement).primary == double_metaphone(fragment[pos]).primary;
      seen.insert(*replacement);
      out[pos] = *replacement;
    }
    for (std::size_t i = 0; i < 6; ++i) fragment_ok = fragment_ok && out[i] == fragment[i];
  }
  std::string sample;
  for (const auto& w : seen) sample += (sample.empty() ? "" : ",") + w;
  c.require(fragment_ok, "fragment replacements from KRTF/ANTS buckets over 50 seeds (" + sample + ")");
  return c;
}

Check wer_fidelity() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  SyntheticCorpusSpec spec;
  spec.documents = 100;
  spec.doc_length = 100;
  const auto corpus = generate_synthetic_corpus(spec, synthetic_word_pool(english())).corpus;
  const auto n = corpus.token_count();
  const auto index = build_metaphone_index(english());
  const double bound = 1.0 / static_cast<double>(n);
  std::size_t runs = 0, short_runs = 0;
  double worst = 0;
  bool ok = n == 10000;
  for (NoiseKind kind : {NoiseKind::deletion, NoiseKind::insertion, NoiseKind::metaphone}) {
    for (int pct = 5; pct <= 50; pct += 5) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const double rate = pct / 100.0;
        const auto noisy = inject_noise(corpus, {kind, rate, seed}, &english(), &index);
        const double err = std::abs(noisy.report.achieved_wer() - rate);
        ++runs;
        if (kind == NoiseKind::metaphone && noisy.report.substitutions < noisy.report.target_edits()) {
          // allowed only when every replaceable token was used
          std::size_t replaceable = 0;
          for (const auto& d : corpus.documents) {
            for (const auto& t : d.tokens) replaceable += index.sound_alikes(t).size() > 1 ? 1 : 0;
          }
          ++short_runs;
          ok = ok && noisy.report.substitutions == replaceable;
          continue;
        }
        worst = std::max(worst, err);
        ok = ok && err <= bound;
      }
    }
  }
  c.require(ok, std::to_string(runs) + " runs on N=" + std::to_string(n) + ", max |WER - rate| " + fmt("%.2e", worst) +
                    " vs 1/N " + fmt("%.0e", bound) + ", " + std::to_string(short_runs) + " reported shortfalls");
  const double elapsed = seconds_since(start);
  c.require(elapsed < kWerSeconds, fmt("%.2fs", elapsed));
  return c;
}

Check lda_recovery() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const auto planted = topicnoise::testing::planted_corpus(3, 60, 50, 8, 99);
  const auto vocab = build_vocabulary(planted.corpus, 1, {});
  double worst = 1;
  std::string scores;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    LdaConfig lda;
    lda.topics = 3;
    lda.seed = seed;
    const auto model = train_lda(planted.corpus, vocab, lda);
    const double s = agreement(planted.topics, top_term_lists(model, planted.topics.front().size())).score;
    worst = std::min(worst, s);
    scores += (scores.empty() ? "" : " ") + fmt("%.3f", s);
  }
  c.require(worst >= kRecoveryThreshold, "K=3 agreement per seed " + scores);
  const double elapsed = seconds_since(start);
  c.require(elapsed < kRecoverySeconds, fmt("%.2fs", elapsed));
  return c;
}

std::map<std::pair<NoiseKind, double>, double> mean_by_cell(const ResultTable& table, int k) {
  std::map<std::pair<NoiseKind, double>, double> out;
  for (const auto& row : table.rows) {
    if (row.k == k) out[{row.noise_kind, row.noise_level}] = row.mean_score;
  }
  return out;
}

Check trends() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig config;
  config.noise_levels = {0.05, 0.5};
  config.k_values = {5};
  config.depth = 25;
  config.stopwords = "none";
  ExperimentInputs inputs{load_corpus(data_file("synthetic_corpus.tsv")), english(), {}};
  const auto result = run_experiment(config, inputs);
  auto m = mean_by_cell(result.table, 5);
  const double d5 = m[{NoiseKind::deletion, 0.05}], d50 = m[{NoiseKind::deletion, 0.5}];
  const double i5 = m[{NoiseKind::insertion, 0.05}], i50 = m[{NoiseKind::insertion, 0.5}];
  const double m5 = m[{NoiseKind::metaphone, 0.05}], m50 = m[{NoiseKind::metaphone, 0.5}];
  c.require(std::abs(d5 - d50) <= kDeletionMaxDrop, "deletion " + fmt("%.3f", d5) + " -> " + fmt("%.3f", d50));
  c.require(i5 - i50 >= kSevereMinDrop, "insertion " + fmt("%.3f", i5) + " -> " + fmt("%.3f", i50));
  c.require(m5 - m50 >= kSevereMinDrop, "metaphone " + fmt("%.3f", m5) + " -> " + fmt("%.3f", m50));
  c.require(d50 > i50 && d50 > m50, "50% ordering deletion > insertion, metaphone");
  const double elapsed = seconds_since(start);
  c.require(elapsed < kTrendSeconds, std::to_string(result.records.size()) + " runs in " + fmt("%.0fs", elapsed));
  return c;
}

Check bbc_ordering() {
  Check c;
  const char* path = std::getenv("TOPICNOISE_BBC_CORPUS");
  if (!path || !*path) {
    c.outcome = Outcome::skip;
    c.detail = "set TOPICNOISE_BBC_CORPUS to a labelled corpus directory to run";
    return c;
  }
  ExperimentConfig config;
  config.corpus_path = path;
  config.frequency_list_path = data_file("english_freq.tsv");
  config.noise_kinds = {NoiseKind::insertion, NoiseKind::metaphone};
  config.noise_levels = {0.5};
  config.reference_k = 5;
  const auto result = run_experiment(config);
  for (NoiseKind kind : {NoiseKind::insertion, NoiseKind::metaphone}) {
    int best_k = 0;
    double best = -1, at_ref = 0;
    for (const auto& row : result.table.rows) {
      if (row.noise_kind != kind) continue;
      if (row.mean_score > best) {
        best = row.mean_score;
        best_k = row.k;
      }
      if (row.k == 5) at_ref = row.mean_score;
    }
    const std::string name(to_string(kind));
    if (kind == NoiseKind::insertion) {
      c.require(best_k > 5, name + " best K=" + std::to_string(best_k) + " (" + fmt("%.3f", best) + ")");
    } else {
      c.require(best > at_ref, name + " best K=" + std::to_string(best_k) + " " + fmt("%.3f", best) + " vs K=5 " +
                                   fmt("%.3f", at_ref));
    }
  }
  return c;
}

Check determinism() {
  Check c;
  const fs::path conf = fs::path(TOPICNOISE_SOURCE_DIR) / "configs" / "smoke.conf";
  const fs::path tmp = fs::temp_directory_path() / ("topicnoise-acceptance-" + std::to_string(std::random_device{}()));
  std::string previous;
  bool same = true;
  for (unsigned threads : {1u, 3u}) {
    ExperimentConfig config = load_experiment_config(conf);
    config.output_dir = tmp / ("run" + std::to_string(threads));
    config.threads = threads;
    run_experiment(config);
    std::ifstream in(config.output_dir / "records.csv", std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    if (!previous.empty()) same = text.str() == previous;
    previous = text.str();
  }
  std::error_code ec;
  fs::remove_all(tmp, ec);
  c.require(same && !previous.empty(), "configs/smoke.conf twice (1 and 3 threads), records.csv " +
                                           std::to_string(previous.size()) + " bytes, byte-identical");
  return c;
}

}  // namespace

int main() {
  set_warning_handler([](std::string_view) {});
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"metric oracle equivalence", metric_oracles},
      {"agreement endpoints", endpoints},
      {"phonetic groupings", phonetic_groups},
      {"WER fidelity", wer_fidelity},
      {"LDA recovery", lda_recovery},
      {"noise trend reproduction", trends},
      {"bbc K ordering", bbc_ordering},
      {"sweep determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.outcome = Outcome::fail;
      c.detail = std::string("exception: ") + e.what();
    }
    const char* tag = c.outcome == Outcome::pass ? "PASS" : c.outcome == Outcome::fail ? "FAIL" : "SKIP";
    if (c.outcome == Outcome::fail) ++failures;
    std::printf("%s %zu %s: %s\n", tag, i + 1, criteria[i].first, c.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
