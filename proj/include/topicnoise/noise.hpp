#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "topicnoise/corpus.hpp"
#include "topicnoise/phonetics.hpp"
#include "topicnoise/random.hpp"

namespace topicnoise {

enum class NoiseKind { deletion, insertion, metaphone };

std::string_view to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view text);

inline constexpr double kMaxNoiseRate = 0.5;

struct NoiseSpec {
  NoiseKind kind = NoiseKind::deletion;
  double rate = 0.0;
  std::uint64_t seed = 0;

  /// Throws ConfigError unless 0 <= rate <= 0.5.
  void validate() const;
};

/// Word error rate (S + D + I) / N. Throws DataError when N is zero.
double wer(std::size_t substitutions, std::size_t deletions, std::size_t insertions, std::size_t reference_tokens);

struct NoiseReport {
  NoiseKind kind = NoiseKind::deletion;
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_tokens = 0;

  /// Requested edit count floor(rate * N).
  std::size_t target_edits() const;
  double achieved_wer() const { return wer(substitutions, deletions, insertions, reference_tokens); }

  static std::string_view csv_header();
  /// kind,rate,seed,S,D,I,N,achieved_wer
  std::string csv_row() const;
};

struct NoisyCorpus {
  Corpus corpus;
  NoiseReport report;
};

/// floor(rate * n), tolerant of rates such as 0.3 that are not exact in
/// binary.
std::size_t edit_count(double rate, std::size_t n);

/// Removes floor(rate * N) token positions chosen uniformly without
/// replacement over the whole corpus.
NoisyCorpus inject_deletion(const Corpus& corpus, double rate, std::uint64_t seed);

/// Inserts floor(rate * N) words drawn with replacement in proportion to their
/// frequency, each at a uniformly chosen gap (before or after any token of
/// any document).
NoisyCorpus inject_insertion(const Corpus& corpus, double rate, const FrequencyList& list, std::uint64_t seed);

/// Replaces up to floor(rate * N) tokens with a different word sharing the
/// primary Metaphone code, sampled by frequency. Positions are visited in a
/// uniformly random order; a token without a sound-alike is skipped, so the
/// achieved rate can fall short when candidates run out.
NoisyCorpus inject_metaphone(const Corpus& corpus, double rate, const MetaphoneIndex& index, std::uint64_t seed);

/// Dispatches on spec.kind. `list` is required for insertion and metaphone;
/// the index is built from it when `index` is null.
NoisyCorpus inject_noise(const Corpus& corpus, const NoiseSpec& spec, const FrequencyList* list,
                         const MetaphoneIndex* index = nullptr);

/// One frequency-weighted sound-alike for `word`, never `word` itself.
std::optional<std::string> sample_sound_alike(std::string_view word, const MetaphoneIndex& index, Rng& rng);

}  // namespace topicnoise
