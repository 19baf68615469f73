#include "topicnoise/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "topicnoise/error.hpp"

namespace topicnoise {
namespace fs = std::filesystem;

namespace {

bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("error while reading " + path.string());
  return ss.str();
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; });
}

std::string join(const std::vector<Term>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string padded_index(std::size_t i, std::size_t count) {
  const std::size_t width = std::max<std::size_t>(6, std::to_string(count).size());
  std::string s = std::to_string(i);
  return std::string(width - std::min(width, s.size()), '0') + s;
}

void sort_and_check(Corpus& corpus, const fs::path& path) {
  if (corpus.documents.empty()) throw DataError("empty corpus: no documents in " + path.string());
  std::sort(corpus.documents.begin(), corpus.documents.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  auto dup = std::adjacent_find(corpus.documents.begin(), corpus.documents.end(),
                                [](const Document& a, const Document& b) { return a.id == b.id; });
  if (dup != corpus.documents.end()) throw DataError("duplicate document id '" + dup->id + "' in " + path.string());
}

std::vector<fs::path> txt_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  return files;
}

Corpus load_dir(const fs::path& root) {
  if (!fs::is_directory(root)) throw DataError("not a directory: " + root.string());
  Corpus corpus;
  corpus.name = root.filename().empty() ? root.parent_path().filename().string() : root.filename().string();
  for (const auto& file : txt_files(root)) {
    corpus.documents.push_back({file.stem().string(), tokenize(read_file(file)), std::nullopt});
  }
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string label = entry.path().filename().string();
    for (const auto& file : txt_files(entry.path())) {
      corpus.documents.push_back({label + "/" + file.stem().string(), tokenize(read_file(file)), label});
    }
  }
  sort_and_check(corpus, root);
  return corpus;
}

Corpus load_lines(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!is_blank(line)) lines.push_back(std::move(line));
  }
  Corpus corpus;
  corpus.name = path.stem().string();
  corpus.documents.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    corpus.documents.push_back({padded_index(i, lines.size()), tokenize(lines[i]), std::nullopt});
  }
  sort_and_check(corpus, path);
  return corpus;
}

Corpus load_tsv(const fs::path& path) {
  std::istringstream in(read_file(path));
  Corpus corpus;
  corpus.name = path.stem().string();
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected id<TAB>label<TAB>tokens");
    }
    Document doc;
    doc.id = line.substr(0, tab1);
    if (doc.id.empty()) throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty document id");
    std::string label = line.substr(tab1 + 1, tab2 - tab1 - 1);
    if (!label.empty()) doc.label = std::move(label);
    doc.tokens = tokenize(std::string_view(line).substr(tab2 + 1));
    corpus.documents.push_back(std::move(doc));
  }
  sort_and_check(corpus, path);
  return corpus;
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("error while writing " + path.string());
}

}  // namespace

std::size_t Corpus::token_count() const {
  return std::accumulate(documents.begin(), documents.end(), std::size_t{0},
                         [](std::size_t n, const Document& d) { return n + d.tokens.size(); });
}

std::string_view to_string(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::dir_of_txt: return "dir-of-txt";
    case CorpusFormat::one_doc_per_line: return "one-doc-per-line";
    case CorpusFormat::tsv: return "tsv";
  }
  return "?";
}

CorpusFormat parse_corpus_format(std::string_view tag) {
  if (tag == "dir-of-txt") return CorpusFormat::dir_of_txt;
  if (tag == "one-doc-per-line") return CorpusFormat::one_doc_per_line;
  if (tag == "tsv") return CorpusFormat::tsv;
  throw ConfigError("unknown corpus format '" + std::string(tag) + "'");
}

CorpusFormat detect_corpus_format(const fs::path& path) {
  if (fs::is_directory(path)) return CorpusFormat::dir_of_txt;
  if (path.extension() == ".tsv") return CorpusFormat::tsv;
  return CorpusFormat::one_doc_per_line;
}

std::vector<Term> tokenize(std::string_view raw) {
  std::vector<Term> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : raw) {
    if (is_alpha(c)) {
      current += static_cast<char>(c | 0x20);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Corpus load_corpus(const fs::path& path, CorpusFormat format) {
  if (!fs::exists(path)) throw DataError("no such file or directory: " + path.string());
  switch (format) {
    case CorpusFormat::dir_of_txt: return load_dir(path);
    case CorpusFormat::one_doc_per_line: return load_lines(path);
    case CorpusFormat::tsv: return load_tsv(path);
  }
  throw DataError("unsupported corpus format");
}

Corpus load_corpus(const fs::path& path) {
  if (!fs::exists(path)) throw DataError("no such file or directory: " + path.string());
  return load_corpus(path, detect_corpus_format(path));
}

void save_corpus(const Corpus& corpus, const fs::path& path, CorpusFormat format) {
  switch (format) {
    case CorpusFormat::dir_of_txt: {
      fs::create_directories(path);
      for (const auto& doc : corpus.documents) {
        fs::path file = path;
        if (doc.label && doc.id.find('/') == std::string::npos) file /= *doc.label;
        file /= doc.id + ".txt";
        fs::create_directories(file.parent_path());
        write_file(file, join(doc.tokens) + "\n");
      }
      return;
    }
    case CorpusFormat::one_doc_per_line: {
      std::string out;
      for (const auto& doc : corpus.documents) out += join(doc.tokens) + "\n";
      write_file(path, out);
      return;
    }
    case CorpusFormat::tsv: {
      std::string out;
      for (const auto& doc : corpus.documents) {
        out += doc.id + "\t" + doc.label.value_or("") + "\t" + join(doc.tokens) + "\n";
      }
      write_file(path, out);
      return;
    }
  }
}

std::map<Term, std::size_t> term_frequencies(const Corpus& corpus) {
  std::map<Term, std::size_t> counts;
  for (const auto& doc : corpus.documents) {
    for (const auto& t : doc.tokens) ++counts[t];
  }
  return counts;
}

std::optional<TermId> Vocabulary::id(std::string_view term) const {
  auto it = ids_.find(std::string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const Corpus& corpus, std::size_t min_df, const StopwordSet& stopwords) {
  if (min_df < 1) throw ConfigError("min_df must be at least 1");
  std::map<Term, std::pair<std::size_t, std::size_t>> stats;  // term -> (df, cf)
  for (const auto& doc : corpus.documents) {
    std::vector<const Term*> seen;
    seen.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) {
      ++stats[t].second;
      seen.push_back(&t);
    }
    std::sort(seen.begin(), seen.end(), [](const Term* a, const Term* b) { return *a < *b; });
    seen.erase(std::unique(seen.begin(), seen.end(), [](const Term* a, const Term* b) { return *a == *b; }),
               seen.end());
    for (const Term* t : seen) ++stats[*t].first;
  }
  Vocabulary vocab;
  for (auto& [term, counts] : stats) {
    if (counts.first < min_df || stopwords.contains(term)) continue;
    vocab.ids_.emplace(term, static_cast<TermId>(vocab.terms_.size()));
    vocab.terms_.push_back(term);
    vocab.document_frequency_.push_back(counts.first);
    vocab.corpus_frequency_.push_back(counts.second);
  }
  return vocab;
}

StopwordSet load_stopwords(const fs::path& path) {
  std::istringstream in(read_file(path));
  StopwordSet words;
  for (std::string line; std::getline(in, line);) {
    for (auto& t : tokenize(line)) words.insert(std::move(t));
  }
  return words;
}

}  // namespace topicnoise
