#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "topicnoise/error.hpp"
#include "topicnoise/experiment.hpp"

namespace topicnoise {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kRecordsHeader = "noise_kind,noise_level,k,corpus_seed,lda_seed,achieved_wer,agreement_score";
constexpr std::string_view kSummaryHeader = "noise_kind,noise_level,k,mean_score,std_dev,n_runs";

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string level_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double round6(double v) { return std::stod(fixed6(v)); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("error while writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T field(const std::vector<std::string>& fields, std::size_t i, std::size_t line_no) {
  T value{};
  const std::string& f = fields[i];
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
  if (ec != std::errc() || ptr != f.data() + f.size()) {
    throw DataError("line " + std::to_string(line_no) + ": bad number '" + f + "'");
  }
  return value;
}

// Calls fn(fields, line_no) for every data line after checking the header.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view header, std::size_t columns, Fn&& fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != header) throw DataError("line " + std::to_string(line_no) + ": expected header '" + std::string(header) + "'");
      saw_header = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != columns) {
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields");
    }
    fn(fields, line_no);
  }
  if (!saw_header) throw DataError("missing CSV header '" + std::string(header) + "'");
}

NoiseKind kind_field(const std::string& text, std::size_t line_no) {
  try {
    return parse_noise_kind(text);
  } catch (const ConfigError&) {
    throw DataError("line " + std::to_string(line_no) + ": unknown noise kind '" + text + "'");
  }
}

}  // namespace

std::string format_records_csv(std::span<const StabilityRecord> records) {
  std::string out(kRecordsHeader);
  out += "\n";
  for (const auto& r : records) {
    out += std::string(to_string(r.noise_kind)) + "," + level_text(r.noise_level) + "," + std::to_string(r.k) + "," +
           std::to_string(r.corpus_seed) + "," + std::to_string(r.lda_seed) + "," + fixed6(r.achieved_wer) + "," +
           fixed6(r.agreement_score) + "\n";
  }
  return out;
}

std::string format_summary_csv(const ResultTable& table) {
  std::string out(kSummaryHeader);
  out += "\n";
  for (const auto& r : table.rows) {
    out += std::string(to_string(r.noise_kind)) + "," + level_text(r.noise_level) + "," + std::to_string(r.k) + "," +
           fixed6(r.mean_score) + "," + fixed6(r.std_dev) + "," + std::to_string(r.n_runs) + "\n";
  }
  return out;
}

std::vector<StabilityRecord> parse_records_csv(std::string_view text) {
  std::vector<StabilityRecord> records;
  for_each_row(text, kRecordsHeader, 7, [&](const std::vector<std::string>& f, std::size_t line_no) {
    records.push_back({kind_field(f[0], line_no), field<double>(f, 1, line_no), field<int>(f, 2, line_no),
                       field<std::uint64_t>(f, 3, line_no), field<std::uint64_t>(f, 4, line_no),
                       field<double>(f, 5, line_no), field<double>(f, 6, line_no)});
  });
  return records;
}

ResultTable parse_summary_csv(std::string_view text) {
  ResultTable table;
  for_each_row(text, kSummaryHeader, 6, [&](const std::vector<std::string>& f, std::size_t line_no) {
    table.rows.push_back({kind_field(f[0], line_no), field<double>(f, 1, line_no), field<int>(f, 2, line_no),
                          field<double>(f, 3, line_no), field<double>(f, 4, line_no), field<std::size_t>(f, 5, line_no)});
  });
  return table;
}

std::vector<StabilityRecord> load_records_csv(const fs::path& path) {
  try {
    return parse_records_csv(read_text(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

ResultTable load_summary_csv(const fs::path& path) {
  try {
    return parse_summary_csv(read_text(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

ResultTable round_for_csv(const ResultTable& table) {
  ResultTable out = table;
  for (auto& r : out.rows) {
    r.noise_level = std::stod(level_text(r.noise_level));
    r.mean_score = round6(r.mean_score);
    r.std_dev = round6(r.std_dev);
  }
  return out;
}

void emit_outputs(const ResultTable& table, std::span<const StabilityRecord> records, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_text(dir / "records.csv", format_records_csv(records));
  write_text(dir / "summary.csv", format_summary_csv(table));

  // plot data: one file per noise kind, one column per k
  std::map<NoiseKind, std::pair<std::set<int>, std::map<double, std::map<int, double>>>> series;
  for (const auto& r : table.rows) {
    auto& [ks, by_level] = series[r.noise_kind];
    ks.insert(r.k);
    by_level[r.noise_level][r.k] = r.mean_score;
  }
  for (const auto& [kind, data] : series) {
    const auto& [ks, by_level] = data;
    std::string out = "noise_level";
    for (int k : ks) out += ",k" + std::to_string(k);
    out += "\n";
    for (const auto& [level, scores] : by_level) {
      out += level_text(level);
      for (int k : ks) {
        auto it = scores.find(k);
        out += "," + (it == scores.end() ? std::string() : fixed6(it->second));
      }
      out += "\n";
    }
    write_text(dir / ("plot_" + std::string(to_string(kind)) + ".csv"), out);
  }
}

}  // namespace topicnoise
