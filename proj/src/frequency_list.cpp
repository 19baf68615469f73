#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "topicnoise/corpus.hpp"
#include "topicnoise/error.hpp"
#include "topicnoise/phonetics.hpp"

namespace topicnoise {
namespace {

std::optional<std::uint64_t> parse_count(std::string_view field) {
  std::uint64_t value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

void sort_entries(std::vector<FrequencyEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const FrequencyEntry& a, const FrequencyEntry& b) {
    return a.frequency != b.frequency ? a.frequency > b.frequency : a.term < b.term;
  });
}

}  // namespace

FrequencyList make_frequency_list(std::span<const FrequencyEntry> entries, std::string source) {
  std::unordered_map<std::string, std::size_t> position;
  FrequencyList list;
  list.source = std::move(source);
  for (const auto& e : entries) {
    if (e.frequency == 0 || e.term.empty()) {
      ++list.skipped_lines;
      continue;
    }
    auto [it, inserted] = position.emplace(e.term, list.entries.size());
    if (inserted) {
      list.entries.push_back(e);
    } else {
      list.entries[it->second].frequency += e.frequency;
    }
  }
  sort_entries(list.entries);
  return list;
}

FrequencyList parse_frequency_list(std::string_view text, std::string source, const FrequencyListOptions& options) {
  std::vector<FrequencyEntry> raw;
  std::size_t skipped = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;

    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;

    std::optional<std::uint64_t> frequency;
    if (options.frequency_column) {
      const std::size_t col = *options.frequency_column;
      if (col >= 2 && col <= fields.size()) frequency = parse_count(fields[col - 1]);
    } else {
      for (std::size_t i = fields.size(); i-- > 1;) {
        if ((frequency = parse_count(fields[i]))) break;
      }
    }
    auto words = tokenize(fields.front());
    if (!frequency || *frequency == 0 || words.size() != 1) {
      ++skipped;
      continue;
    }
    raw.push_back({std::move(words.front()), *frequency});
  }
  FrequencyList list = make_frequency_list(raw, std::move(source));
  list.skipped_lines += skipped;
  if (list.empty()) throw DataError("frequency list " + list.source + " has no valid entries");
  return list;
}

FrequencyList load_frequency_list(const std::filesystem::path& path, const FrequencyListOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read frequency list " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_frequency_list(ss.str(), path.string(), options);
}

std::span<const FrequencyEntry> MetaphoneIndex::bucket(std::string_view code) const {
  auto it = buckets_.find(code);
  if (it == buckets_.end()) return {};
  return it->second;
}

std::span<const FrequencyEntry> MetaphoneIndex::sound_alikes(std::string_view word) const {
  return bucket(double_metaphone(word).primary);
}

std::size_t MetaphoneIndex::term_count() const {
  std::size_t n = 0;
  for (const auto& [code, entries] : buckets_) n += entries.size();
  return n;
}

MetaphoneIndex build_metaphone_index(const FrequencyList& list) {
  MetaphoneIndex index;
  for (const auto& entry : list.entries) {
    const bool alphabetic = !entry.term.empty() && std::all_of(entry.term.begin(), entry.term.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    });
    if (!alphabetic) continue;
    // all-silent words ("hh") share the empty key so the index stays a partition
    index.buckets_[double_metaphone(entry.term).primary].push_back(entry);
  }
  for (auto& [code, entries] : index.buckets_) sort_entries(entries);
  return index;
}

}  // namespace topicnoise
