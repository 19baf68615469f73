#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topicnoise/corpus.hpp"
#include "topicnoise/lda.hpp"
#include "topicnoise/phonetics.hpp"

namespace topicnoise {

/// Parameters of a corpus with planted topics. Each topic owns a disjoint
/// block of `terms_per_topic` words whose probabilities decay as
/// 1 / (rank + 1)^zipf_exponent. Every document has one dominant topic
/// (assigned round-robin); each token comes from it with probability
/// `purity` and from a uniformly chosen other topic otherwise.
struct SyntheticCorpusSpec {
  std::size_t documents = 1000;
  int topics = 5;
  std::size_t terms_per_topic = 40;
  std::size_t doc_length = 100;
  double purity = 0.7;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;
  std::string name = "synthetic";
};

struct SyntheticCorpus {
  Corpus corpus;
  /// Planted vocabulary of each topic, most probable word first.
  std::vector<RankedTermList> topic_terms;
};

/// Draws the planted vocabularies from `word_pool` (which must hold at least
/// topics * terms_per_topic distinct words) and samples the documents.
SyntheticCorpus generate_synthetic_corpus(const SyntheticCorpusSpec& spec, std::span<const Term> word_pool);

/// Content words suitable for planted topics: alphabetic, at least four
/// letters, not stopwords, ranked between `min_rank` and `max_rank` in the
/// list, and with at least one other word sharing their Metaphone code.
std::vector<Term> synthetic_word_pool(const FrequencyList& list, std::size_t min_rank = 300, std::size_t max_rank = 5000);

}  // namespace topicnoise
