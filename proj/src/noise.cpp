#include "topicnoise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "topicnoise/error.hpp"

namespace topicnoise {
namespace {

struct TokenRef {
  std::uint32_t doc;
  std::uint32_t pos;
};

std::vector<TokenRef> token_positions(const Corpus& corpus) {
  std::vector<TokenRef> refs;
  refs.reserve(corpus.token_count());
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    for (std::size_t i = 0; i < corpus.documents[d].tokens.size(); ++i) {
      refs.push_back({static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(i)});
    }
  }
  return refs;
}

// Lazy Fisher-Yates: each call yields the next element of a uniformly random
// permutation of [0, n).
class RandomOrder {
 public:
  RandomOrder(std::size_t n, Rng& rng) : slots_(n), rng_(rng) { std::iota(slots_.begin(), slots_.end(), 0); }

  bool done() const { return next_ == slots_.size(); }

  std::size_t next() {
    const std::size_t j = next_ + static_cast<std::size_t>(rng_.below(slots_.size() - next_));
    std::swap(slots_[next_], slots_[j]);
    return slots_[next_++];
  }

 private:
  std::vector<std::size_t> slots_;
  std::size_t next_ = 0;
  Rng& rng_;
};

std::vector<std::uint64_t> cumulative_weights(std::span<const FrequencyEntry> entries, std::string_view exclude = {}) {
  std::vector<std::uint64_t> cumulative;
  cumulative.reserve(entries.size());
  std::uint64_t total = 0;
  for (const auto& e : entries) {
    if (e.term != exclude) total += e.frequency;
    cumulative.push_back(total);
  }
  return cumulative;
}

NoiseReport make_report(NoiseKind kind, const Corpus& corpus, double rate, std::uint64_t seed) {
  NoiseSpec{kind, rate, seed}.validate();
  NoiseReport report;
  report.kind = kind;
  report.rate = rate;
  report.seed = seed;
  report.reference_tokens = corpus.token_count();
  return report;
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::deletion: return "deletion";
    case NoiseKind::insertion: return "insertion";
    case NoiseKind::metaphone: return "metaphone";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view text) {
  if (text == "deletion") return NoiseKind::deletion;
  if (text == "insertion") return NoiseKind::insertion;
  if (text == "metaphone") return NoiseKind::metaphone;
  throw ConfigError("unknown noise kind '" + std::string(text) + "'");
}

void NoiseSpec::validate() const {
  if (!(rate >= 0.0 && rate <= kMaxNoiseRate)) {
    throw ConfigError("noise rate " + std::to_string(rate) + " outside [0, 0.5]");
  }
}

double wer(std::size_t substitutions, std::size_t deletions, std::size_t insertions, std::size_t reference_tokens) {
  if (reference_tokens == 0) throw DataError("word error rate undefined for an empty reference");
  return static_cast<double>(substitutions + deletions + insertions) / static_cast<double>(reference_tokens);
}

std::size_t edit_count(double rate, std::size_t n) {
  return static_cast<std::size_t>(std::floor(rate * static_cast<double>(n) + 1e-9));
}

std::size_t NoiseReport::target_edits() const { return edit_count(rate, reference_tokens); }

std::string_view NoiseReport::csv_header() { return "kind,rate,seed,S,D,I,N,achieved_wer"; }

std::string NoiseReport::csv_row() const {
  char buf[256];
  const double achieved = reference_tokens ? achieved_wer() : 0.0;
  std::snprintf(buf, sizeof buf, "%s,%.6g,%llu,%zu,%zu,%zu,%zu,%.6f", std::string(to_string(kind)).c_str(), rate,
                static_cast<unsigned long long>(seed), substitutions, deletions, insertions, reference_tokens, achieved);
  return buf;
}

NoisyCorpus inject_deletion(const Corpus& corpus, double rate, std::uint64_t seed) {
  NoiseReport report = make_report(NoiseKind::deletion, corpus, rate, seed);
  const auto refs = token_positions(corpus);
  const std::size_t target = edit_count(rate, refs.size());

  Rng rng(derive_seed({seed, static_cast<std::uint64_t>(NoiseKind::deletion)}));
  RandomOrder order(refs.size(), rng);
  std::vector<char> removed(refs.size(), 0);
  for (std::size_t i = 0; i < target; ++i) removed[order.next()] = 1;

  NoisyCorpus out{Corpus{corpus.name, {}}, report};
  out.corpus.documents.reserve(corpus.documents.size());
  std::size_t flat = 0;
  for (const auto& doc : corpus.documents) {
    Document noisy{doc.id, {}, doc.label};
    noisy.tokens.reserve(doc.tokens.size());
    for (const auto& token : doc.tokens) {
      if (!removed[flat++]) noisy.tokens.push_back(token);
    }
    out.corpus.documents.push_back(std::move(noisy));
  }
  out.report.deletions = target;
  return out;
}

NoisyCorpus inject_insertion(const Corpus& corpus, double rate, const FrequencyList& list, std::uint64_t seed) {
  NoiseReport report = make_report(NoiseKind::insertion, corpus, rate, seed);
  if (list.empty()) throw DataError("insertion needs a non-empty frequency list");
  const std::size_t n = corpus.token_count();
  const std::size_t target = edit_count(rate, n);

  // Gap g of document d sits before token g; g == size is after the last token.
  std::vector<std::size_t> gap_offset(corpus.documents.size() + 1, 0);
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    gap_offset[d + 1] = gap_offset[d] + corpus.documents[d].tokens.size() + 1;
  }
  const std::size_t gaps = gap_offset.back();

  Rng rng(derive_seed({seed, static_cast<std::uint64_t>(NoiseKind::insertion)}));
  const auto cumulative = cumulative_weights(list.entries);
  std::vector<std::pair<std::size_t, std::size_t>> inserts;  // (gap, entry)
  inserts.reserve(target);
  for (std::size_t i = 0; i < target; ++i) {
    const auto entry = rng.weighted_index(cumulative);
    const auto gap = static_cast<std::size_t>(rng.below(gaps));
    inserts.emplace_back(gap, entry);
  }
  std::stable_sort(inserts.begin(), inserts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  NoisyCorpus out{Corpus{corpus.name, {}}, report};
  out.corpus.documents.reserve(corpus.documents.size());
  auto next = inserts.begin();
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    Document noisy{doc.id, {}, doc.label};
    for (std::size_t g = 0; g <= doc.tokens.size(); ++g) {
      const std::size_t flat_gap = gap_offset[d] + g;
      for (; next != inserts.end() && next->first == flat_gap; ++next) {
        noisy.tokens.push_back(list.entries[next->second].term);
      }
      if (g < doc.tokens.size()) noisy.tokens.push_back(doc.tokens[g]);
    }
    out.corpus.documents.push_back(std::move(noisy));
  }
  out.report.insertions = target;
  return out;
}

std::optional<std::string> sample_sound_alike(std::string_view word, const MetaphoneIndex& index, Rng& rng) {
  const auto candidates = index.sound_alikes(word);
  const auto cumulative = cumulative_weights(candidates, word);
  if (cumulative.empty() || cumulative.back() == 0) return std::nullopt;
  return candidates[rng.weighted_index(cumulative)].term;
}

NoisyCorpus inject_metaphone(const Corpus& corpus, double rate, const MetaphoneIndex& index, std::uint64_t seed) {
  NoiseReport report = make_report(NoiseKind::metaphone, corpus, rate, seed);
  const auto refs = token_positions(corpus);
  const std::size_t target = edit_count(rate, refs.size());

  struct Candidates {
    std::span<const FrequencyEntry> entries;
    std::vector<std::uint64_t> cumulative;
  };
  std::unordered_map<std::string, Candidates> cache;
  auto candidates_for = [&](const std::string& word) -> const Candidates& {
    auto it = cache.find(word);
    if (it == cache.end()) {
      const auto entries = index.sound_alikes(word);
      it = cache.emplace(word, Candidates{entries, cumulative_weights(entries, word)}).first;
    }
    return it->second;
  };

  NoisyCorpus out{corpus, report};
  Rng rng(derive_seed({seed, static_cast<std::uint64_t>(NoiseKind::metaphone)}));
  RandomOrder order(refs.size(), rng);
  std::size_t replaced = 0;
  while (replaced < target && !order.done()) {
    const TokenRef ref = refs[order.next()];
    std::string& token = out.corpus.documents[ref.doc].tokens[ref.pos];
    const Candidates& c = candidates_for(token);
    if (c.cumulative.empty() || c.cumulative.back() == 0) continue;
    token = c.entries[rng.weighted_index(c.cumulative)].term;
    ++replaced;
  }
  out.report.substitutions = replaced;
  return out;
}

NoisyCorpus inject_noise(const Corpus& corpus, const NoiseSpec& spec, const FrequencyList* list,
                         const MetaphoneIndex* index) {
  switch (spec.kind) {
    case NoiseKind::deletion: return inject_deletion(corpus, spec.rate, spec.seed);
    case NoiseKind::insertion:
      if (!list) throw DataError("insertion noise needs a frequency list");
      return inject_insertion(corpus, spec.rate, *list, spec.seed);
    case NoiseKind::metaphone: {
      if (index) return inject_metaphone(corpus, spec.rate, *index, spec.seed);
      if (!list) throw DataError("metaphone noise needs a frequency list");
      return inject_metaphone(corpus, spec.rate, build_metaphone_index(*list), spec.seed);
    }
  }
  throw DataError("unknown noise kind");
}

}  // namespace topicnoise
