#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace topicnoise {

inline constexpr std::size_t kMetaphoneMaxLength = 4;

/// Double Metaphone output. `alternate` is set only when it differs from the
/// primary code. Both codes are truncated to four symbols.
struct MetaphoneCodes {
  std::string primary;
  std::optional<std::string> alternate;

  /// True when the input had nothing to encode.
  bool empty() const { return primary.empty() && !alternate; }
  bool operator==(const MetaphoneCodes&) const = default;
};

/// Lawrence Philips' Double Metaphone (2000 C++ release), case-insensitive.
/// Letters outside A-Z are skipped except for the space-sensitive rules of
/// the original, which treat the end of the word as a space.
MetaphoneCodes double_metaphone(std::string_view word);

/// Untruncated variant, used by tests and diagnostics.
MetaphoneCodes double_metaphone(std::string_view word, std::size_t max_length);

struct FrequencyEntry {
  std::string term;
  std::uint64_t frequency = 0;

  bool operator==(const FrequencyEntry&) const = default;
};

/// Word-frequency table, sorted by descending frequency with ties broken by
/// term.
struct FrequencyList {
  std::vector<FrequencyEntry> entries;
  std::string source;
  std::size_t skipped_lines = 0;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

struct FrequencyListOptions {
  /// 1-based column holding the frequency; the last integer field when unset.
  std::optional<std::size_t> frequency_column;
};

/// Reads "word ... frequency" records. Lines starting with '#' are comments.
/// Words are normalised with tokenize(); a record whose word does not reduce
/// to exactly one token, or whose frequency is missing or zero, is skipped
/// and counted. Duplicate words have their frequencies summed. Throws
/// DataError when nothing valid remains.
FrequencyList load_frequency_list(const std::filesystem::path& path, const FrequencyListOptions& options = {});

/// Same rules applied to in-memory text.
FrequencyList parse_frequency_list(std::string_view text, std::string source = "<memory>",
                                   const FrequencyListOptions& options = {});

/// Builds a list from explicit (term, frequency) pairs, merging duplicates.
FrequencyList make_frequency_list(std::span<const FrequencyEntry> entries, std::string source = "<memory>");

/// Primary Metaphone code -> words sharing it, most frequent first.
class MetaphoneIndex {
 public:
  using Bucket = std::vector<FrequencyEntry>;

  MetaphoneIndex() = default;

  /// Words in the bucket keyed by `code`; empty when the code is unknown.
  std::span<const FrequencyEntry> bucket(std::string_view code) const;

  /// Bucket of the word's primary code.
  std::span<const FrequencyEntry> sound_alikes(std::string_view word) const;

  const std::map<std::string, Bucket, std::less<>>& buckets() const { return buckets_; }
  std::size_t bucket_count() const { return buckets_.size(); }
  std::size_t term_count() const;
  bool empty() const { return buckets_.empty(); }

 private:
  friend MetaphoneIndex build_metaphone_index(const FrequencyList&);
  std::map<std::string, Bucket, std::less<>> buckets_;
};

/// Files every alphabetic term under its primary code only.
MetaphoneIndex build_metaphone_index(const FrequencyList& list);

}  // namespace topicnoise
