#include "topicnoise/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "topicnoise/error.hpp"
#include "topicnoise/random.hpp"

namespace topicnoise {

SyntheticCorpus generate_synthetic_corpus(const SyntheticCorpusSpec& spec, std::span<const Term> word_pool) {
  if (spec.topics < 1 || spec.terms_per_topic < 1 || spec.documents < 1) {
    throw ConfigError("synthetic corpus needs at least one topic, term and document");
  }
  if (!(spec.purity >= 0.0 && spec.purity <= 1.0)) throw ConfigError("purity must lie in [0, 1]");
  const std::size_t needed = static_cast<std::size_t>(spec.topics) * spec.terms_per_topic;
  std::vector<Term> pool(word_pool.begin(), word_pool.end());
  {
    std::unordered_set<Term> seen;
    std::erase_if(pool, [&](const Term& t) { return !seen.insert(t).second; });
  }
  if (pool.size() < needed) {
    throw DataError("word pool has " + std::to_string(pool.size()) + " distinct words, need " + std::to_string(needed));
  }

  Rng rng(derive_seed({spec.seed, fnv1a("synthetic")}));
  for (std::size_t i = 0; i < needed; ++i) {
    std::swap(pool[i], pool[i + static_cast<std::size_t>(rng.below(pool.size() - i))]);
  }

  SyntheticCorpus out;
  out.topic_terms.resize(static_cast<std::size_t>(spec.topics));
  for (std::size_t i = 0; i < needed; ++i) out.topic_terms[i / spec.terms_per_topic].push_back(pool[i]);

  // weights scaled to integers so draws stay exact and portable
  std::vector<std::uint64_t> cumulative(spec.terms_per_topic);
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < spec.terms_per_topic; ++r) {
    total += static_cast<std::uint64_t>(std::llround(1e9 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent)));
    cumulative[r] = total;
  }

  out.corpus.name = spec.name;
  const int width = static_cast<int>(std::to_string(spec.documents).size());
  for (std::size_t d = 0; d < spec.documents; ++d) {
    const auto dominant = static_cast<int>(d % static_cast<std::size_t>(spec.topics));
    char id[32];
    std::snprintf(id, sizeof id, "doc%0*zu", width, d);
    Document doc{id, {}, "topic" + std::to_string(dominant)};
    doc.tokens.reserve(spec.doc_length);
    for (std::size_t i = 0; i < spec.doc_length; ++i) {
      int topic = dominant;
      if (spec.topics > 1 && rng.uniform01() >= spec.purity) {
        topic = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.topics - 1)));
        if (topic >= dominant) ++topic;
      }
      doc.tokens.push_back(out.topic_terms[static_cast<std::size_t>(topic)][rng.weighted_index(cumulative)]);
    }
    out.corpus.documents.push_back(std::move(doc));
  }
  return out;
}

std::vector<Term> synthetic_word_pool(const FrequencyList& list, std::size_t min_rank, std::size_t max_rank) {
  const MetaphoneIndex index = build_metaphone_index(list);
  const auto& stopwords = default_stopwords();
  std::vector<Term> pool;
  for (std::size_t r = min_rank; r < std::min(max_rank, list.size()); ++r) {
    const Term& term = list.entries[r].term;
    if (term.size() < 4 || stopwords.contains(term)) continue;
    if (index.sound_alikes(term).size() < 2) continue;
    pool.push_back(term);
  }
  return pool;
}

}  // namespace topicnoise
