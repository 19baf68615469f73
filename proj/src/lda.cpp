#include "topicnoise/lda.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "topicnoise/error.hpp"
#include "topicnoise/log.hpp"
#include "topicnoise/random.hpp"

namespace topicnoise {
namespace {

// (n_dk + alpha) * (n_kw + beta) / (n_k + V * beta), accumulated into weights.
inline double fill_conditional(int topics, const int* doc_topic, const int* word_topic, const int* topic_totals,
                               double alpha, double beta, double vocab_beta, double* weights) {
  double total = 0.0;
  for (int k = 0; k < topics; ++k) {
    const double w = (doc_topic[k] + alpha) * (word_topic[k] + beta) / (topic_totals[k] + vocab_beta);
    weights[k] = w;
    total += w;
  }
  return total;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void LdaConfig::validate() const {
  if (topics < 2) throw ConfigError("LDA needs at least 2 topics");
  if (!(alpha_sum > 0.0)) throw ConfigError("alpha_sum must be positive");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (iterations < 1) throw ConfigError("LDA needs at least one iteration");
}

double topic_conditional(const Eigen::Ref<const Eigen::VectorXi>& doc_topic, const Eigen::Ref<const Eigen::VectorXi>& word_topic,
                         const Eigen::Ref<const Eigen::VectorXi>& topic_totals, double alpha, double beta,
                         double vocab_beta, Eigen::Ref<Eigen::VectorXd> weights) {
  const auto topics = static_cast<int>(doc_topic.size());
  if (word_topic.size() != topics || topic_totals.size() != topics || weights.size() != topics) {
    throw DimensionMismatch("topic_conditional: count vectors differ in length");
  }
  double total = 0.0;
  for (int k = 0; k < topics; ++k) {
    weights[k] = (doc_topic[k] + alpha) * (word_topic[k] + beta) / (topic_totals[k] + vocab_beta);
    total += weights[k];
  }
  return total;
}

TopicModel train_lda(const Corpus& corpus, const Vocabulary& vocab, const LdaConfig& config) {
  config.validate();
  const int K = config.topics;
  const auto V = static_cast<Eigen::Index>(vocab.size());
  const auto D = static_cast<Eigen::Index>(corpus.documents.size());

  std::vector<std::vector<TermId>> words(corpus.documents.size());
  std::size_t total_tokens = 0;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    for (const auto& t : corpus.documents[d].tokens) {
      if (auto id = vocab.id(t)) words[d].push_back(*id);
    }
    total_tokens += words[d].size();
  }
  if (total_tokens == 0) throw DataError("corpus '" + corpus.name + "' is empty after vocabulary filtering");
  if (K > D) {
    warn("training " + std::to_string(K) + " topics on only " + std::to_string(D) + " documents");
  }

  TopicModel model;
  model.config = config;
  model.corpus_name = corpus.name;
  model.vocabulary = vocab.terms();
  model.topic_word_counts = Eigen::MatrixXi::Zero(K, V);
  model.doc_topic_counts = Eigen::MatrixXi::Zero(K, D);
  Eigen::VectorXi topic_totals = Eigen::VectorXi::Zero(K);

  Rng rng(derive_seed({config.seed, fnv1a("lda")}));
  std::vector<std::vector<int>> assignment(words.size());
  for (std::size_t d = 0; d < words.size(); ++d) {
    assignment[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(K)));
      assignment[d][i] = k;
      ++model.topic_word_counts(k, words[d][i]);
      ++model.doc_topic_counts(k, static_cast<Eigen::Index>(d));
      ++topic_totals[k];
    }
  }

  const double alpha = config.alpha();
  const double beta = config.beta;
  const double vocab_beta = beta * static_cast<double>(V);
  std::vector<double> weights(static_cast<std::size_t>(K));
  int* topic_total = topic_totals.data();

  for (int sweep = 0; sweep < config.iterations; ++sweep) {
    for (std::size_t d = 0; d < words.size(); ++d) {
      int* doc_topic = model.doc_topic_counts.col(static_cast<Eigen::Index>(d)).data();
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        int* word_topic = model.topic_word_counts.col(words[d][i]).data();
        int k = assignment[d][i];
        --doc_topic[k];
        --word_topic[k];
        --topic_total[k];

        const double total = fill_conditional(K, doc_topic, word_topic, topic_total, alpha, beta, vocab_beta, weights.data());
        double u = rng.uniform01() * total;
        k = 0;
        for (; k < K - 1; ++k) {
          u -= weights[static_cast<std::size_t>(k)];
          if (u < 0.0) break;
        }

        assignment[d][i] = k;
        ++doc_topic[k];
        ++word_topic[k];
        ++topic_total[k];
      }
    }
  }

  model.topics = top_term_lists(model, kDefaultDepth);
  return model;
}

RankedTermList top_terms(const TopicModel& model, int topic, std::size_t depth) {
  if (topic < 0 || topic >= model.topic_count()) {
    throw std::out_of_range("topic index " + std::to_string(topic) + " out of range [0, " +
                            std::to_string(model.topic_count()) + ")");
  }
  if (!model.has_counts()) {
    const auto& stored = model.topics.at(static_cast<std::size_t>(topic));
    return RankedTermList(stored.begin(), stored.begin() + static_cast<std::ptrdiff_t>(std::min(depth, stored.size())));
  }
  const auto row = model.topic_word_counts.row(topic);
  std::vector<Eigen::Index> ids;
  for (Eigen::Index w = 0; w < row.size(); ++w) {
    if (row[w] > 0) ids.push_back(w);
  }
  const auto keep = static_cast<std::ptrdiff_t>(std::min(depth, ids.size()));
  // vocabulary ids are in term order, so comparing ids breaks ties by term
  std::partial_sort(ids.begin(), ids.begin() + keep, ids.end(), [&](Eigen::Index a, Eigen::Index b) {
    return row[a] != row[b] ? row[a] > row[b] : a < b;
  });
  RankedTermList terms;
  terms.reserve(static_cast<std::size_t>(keep));
  for (std::ptrdiff_t i = 0; i < keep; ++i) terms.push_back(model.vocabulary[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])]);
  return terms;
}

std::vector<RankedTermList> top_term_lists(const TopicModel& model, std::size_t depth) {
  std::vector<RankedTermList> lists;
  lists.reserve(static_cast<std::size_t>(model.topic_count()));
  for (int k = 0; k < model.topic_count(); ++k) lists.push_back(top_terms(model, k, depth));
  return lists;
}

std::string format_model(const TopicModel& model, std::size_t depth) {
  const auto& c = model.config;
  std::string out = "# topicnoise-model topics=" + std::to_string(c.topics) + " alpha_sum=" + format_double(c.alpha_sum) +
                    " beta=" + format_double(c.beta) + " iterations=" + std::to_string(c.iterations) +
                    " seed=" + std::to_string(c.seed) + " depth=" + std::to_string(depth) + " corpus=" + model.corpus_name +
                    "\n";
  for (int k = 0; k < model.topic_count(); ++k) {
    out += std::to_string(k) + ":";
    for (const auto& term : top_terms(model, k, depth)) out += " " + term;
    out += "\n";
  }
  return out;
}

void save_model(const TopicModel& model, const std::filesystem::path& path, std::size_t depth) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model file " + path.string());
  out << format_model(model, depth);
  if (!out) throw DataError("error while writing model file " + path.string());
}

TopicModel parse_model(std::string_view text, std::string_view source) {
  TopicModel model;
  bool have_header = false;
  int declared_topics = -1;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    return DataError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (have_header || line.rfind("# topicnoise-model", 0) != 0) continue;
      have_header = true;
      std::istringstream fields(line.substr(18));
      for (std::string field; fields >> field;) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw fail("malformed header field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        try {
          if (key == "topics") declared_topics = std::stoi(value);
          else if (key == "alpha_sum") model.config.alpha_sum = std::stod(value);
          else if (key == "beta") model.config.beta = std::stod(value);
          else if (key == "iterations") model.config.iterations = std::stoi(value);
          else if (key == "seed") model.config.seed = std::stoull(value);
          else if (key == "corpus") {
            // the corpus name runs to the end of the line
            std::string rest;
            std::getline(fields, rest);
            model.corpus_name = value + rest;
          }
        } catch (const std::logic_error&) {
          throw fail("bad value for header field '" + key + "'");
        }
      }
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw fail("expected 'topic_id: terms'");
    int id = -1;
    const std::string_view id_text = std::string_view(line).substr(0, colon);
    auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (ec != std::errc() || ptr != id_text.data() + id_text.size() || id != static_cast<int>(model.topics.size())) {
      throw fail("topic ids must run 0, 1, 2, ... in order");
    }
    std::istringstream terms(line.substr(colon + 1));
    RankedTermList list;
    for (std::string term; terms >> term;) list.push_back(term);
    model.topics.push_back(std::move(list));
  }
  if (model.topics.empty()) throw DataError(std::string(source) + ": no topics in model file");
  if (declared_topics >= 0 && declared_topics != static_cast<int>(model.topics.size())) {
    throw DataError(std::string(source) + ": header declares " + std::to_string(declared_topics) + " topics but file has " +
                    std::to_string(model.topics.size()));
  }
  model.config.topics = static_cast<int>(model.topics.size());
  return model;
}

TopicModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read model file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path.string());
}

}  // namespace topicnoise
