#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "topicnoise/corpus.hpp"

namespace topicnoise {

/// Distinct terms, most relevant first.
using RankedTermList = std::vector<Term>;

inline constexpr std::size_t kDefaultDepth = 25;

struct LdaConfig {
  int topics = 5;
  double alpha_sum = 5.0;  ///< per-topic alpha is alpha_sum / topics
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 1;

  double alpha() const { return alpha_sum / topics; }
  /// Throws ConfigError unless topics >= 2, alpha_sum > 0, beta > 0 and
  /// iterations >= 1.
  void validate() const;
  bool operator==(const LdaConfig&) const = default;
};

/// Collapsed Gibbs sampling state reduced to its final counts.
///
/// Models read back from an export file carry only `topics`; the count
/// tables are then empty.
struct TopicModel {
  LdaConfig config;
  std::string corpus_name;
  std::vector<Term> vocabulary;           ///< term strings by id
  Eigen::MatrixXi topic_word_counts;      ///< topics x terms
  Eigen::MatrixXi doc_topic_counts;       ///< topics x documents
  std::vector<RankedTermList> topics;     ///< top kDefaultDepth terms per topic

  int topic_count() const { return config.topics; }
  bool has_counts() const { return topic_word_counts.size() > 0; }
};

/// Unnormalised full conditional of one token over all topics, written into
/// `weights`; returns the sum. Arguments are the counts with the token
/// already removed.
double topic_conditional(const Eigen::Ref<const Eigen::VectorXi>& doc_topic, const Eigen::Ref<const Eigen::VectorXi>& word_topic,
                         const Eigen::Ref<const Eigen::VectorXi>& topic_totals, double alpha, double beta,
                         double vocab_beta, Eigen::Ref<Eigen::VectorXd> weights);

/// Runs config.iterations full Gibbs sweeps from a seeded random assignment.
/// Tokens outside `vocab` are ignored. Throws DataError when no token
/// survives the vocabulary; warns when topics exceed documents.
TopicModel train_lda(const Corpus& corpus, const Vocabulary& vocab, const LdaConfig& config);

/// Terms of one topic by descending count, ties broken by term, zero counts
/// dropped, at most `depth` long. Throws std::out_of_range on a bad index.
RankedTermList top_terms(const TopicModel& model, int topic, std::size_t depth = kDefaultDepth);

/// All topics at `depth`.
std::vector<RankedTermList> top_term_lists(const TopicModel& model, std::size_t depth = kDefaultDepth);

/// Text export: a '#' header line with the configuration followed by one
/// "topic_id: term1 term2 ..." line per topic.
void save_model(const TopicModel& model, const std::filesystem::path& path, std::size_t depth = kDefaultDepth);
std::string format_model(const TopicModel& model, std::size_t depth = kDefaultDepth);
TopicModel load_model(const std::filesystem::path& path);
TopicModel parse_model(std::string_view text, std::string_view source = "<memory>");

}  // namespace topicnoise
