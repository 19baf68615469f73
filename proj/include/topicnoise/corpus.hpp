#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topicnoise {

using Term = std::string;
using TermId = std::int32_t;
using StopwordSet = std::unordered_set<std::string>;

struct Document {
  std::string id;
  std::vector<Term> tokens;
  std::optional<std::string> label;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::string name;
  std::vector<Document> documents;

  /// Total token count N.
  std::size_t token_count() const;
  bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat {
  dir_of_txt,        ///< one .txt file per document, optional label sub-directories
  one_doc_per_line,  ///< blank lines skipped
  tsv,               ///< canonical: id<TAB>label<TAB>space-separated tokens
};

std::string_view to_string(CorpusFormat format);
CorpusFormat parse_corpus_format(std::string_view tag);

/// Picks dir-of-txt for directories, tsv for *.tsv files and
/// one-doc-per-line otherwise.
CorpusFormat detect_corpus_format(const std::filesystem::path& path);

/// Lowercases ASCII letters, splits on every other byte and drops tokens
/// shorter than two characters.
std::vector<Term> tokenize(std::string_view raw);

/// Throws DataError on a missing path, unreadable file or zero documents.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
Corpus load_corpus(const std::filesystem::path& path);

/// Writes a corpus so that load_corpus(path, format) reproduces it. The
/// one-doc-per-line format keeps neither ids nor labels nor empty documents;
/// use tsv for a lossless copy.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format);

/// Term counts over every token occurrence, ordered by term.
std::map<Term, std::size_t> term_frequencies(const Corpus& corpus);

class Vocabulary {
 public:
  Vocabulary() = default;

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Terms in id order (ascending lexicographic).
  const std::vector<Term>& terms() const { return terms_; }
  const Term& term(TermId id) const { return terms_[static_cast<std::size_t>(id)]; }
  std::optional<TermId> id(std::string_view term) const;

  std::size_t document_frequency(TermId id) const { return document_frequency_[static_cast<std::size_t>(id)]; }
  std::size_t corpus_frequency(TermId id) const { return corpus_frequency_[static_cast<std::size_t>(id)]; }

 private:
  friend Vocabulary build_vocabulary(const Corpus&, std::size_t, const StopwordSet&);

  std::vector<Term> terms_;
  std::vector<std::size_t> document_frequency_;
  std::vector<std::size_t> corpus_frequency_;
  std::unordered_map<std::string, TermId> ids_;
};

/// Drops stopwords and terms seen in fewer than min_df documents.
Vocabulary build_vocabulary(const Corpus& corpus, std::size_t min_df, const StopwordSet& stopwords);

inline constexpr std::size_t kDefaultMinDf = 3;

/// The bundled English stopword list (318 words).
const StopwordSet& default_stopwords();

/// One term per line; lines are normalised with tokenize().
StopwordSet load_stopwords(const std::filesystem::path& path);

}  // namespace topicnoise
