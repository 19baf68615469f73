#include "topicnoise/phonetics.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "topicnoise/error.hpp"

namespace topicnoise {
namespace {

struct ReferenceRow {
  std::string word, primary, alternate;
};

// Codes produced by an independent Double Metaphone implementation.
std::vector<ReferenceRow> reference_rows() {
  std::ifstream in(std::filesystem::path(__FILE__).parent_path() / "data" / "double_metaphone_reference.tsv");
  std::vector<ReferenceRow> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    ReferenceRow row;
    std::getline(fields, row.word, '\t');
    std::getline(fields, row.primary, '\t');
    std::getline(fields, row.alternate, '\t');
    rows.push_back(row);
  }
  return rows;
}

TEST(DoubleMetaphone, MatchesReferenceImplementation) {
  const auto rows = reference_rows();
  ASSERT_GT(rows.size(), 200u);
  for (const auto& row : rows) {
    const auto codes = double_metaphone(row.word);
    EXPECT_EQ(codes.primary, row.primary) << row.word;
    EXPECT_EQ(codes.alternate.value_or(""), row.alternate) << row.word;
  }
}

TEST(DoubleMetaphone, SoundAlikeGroups) {
  for (const char* w : {"industry", "units", "induced"}) EXPECT_EQ(double_metaphone(w).primary, "ANTS") << w;
  for (const char* w : {"grateful", "creative", "Cardiff"}) EXPECT_EQ(double_metaphone(w).primary, "KRTF") << w;
  // final D after N is kept, so no S sound is produced
  EXPECT_EQ(double_metaphone("wound"), (MetaphoneCodes{"ANT", "FNT"}));
}

TEST(DoubleMetaphone, ClassicExamples) {
  EXPECT_EQ(double_metaphone("Smith"), (MetaphoneCodes{"SM0", "XMT"}));
  EXPECT_EQ(double_metaphone("Schmidt"), (MetaphoneCodes{"XMT", "SMT"}));
  EXPECT_EQ(double_metaphone("Thomas"), (MetaphoneCodes{"TMS", std::nullopt}));
  EXPECT_EQ(double_metaphone("knight").primary, "NT");
  EXPECT_EQ(double_metaphone("Xavier"), (MetaphoneCodes{"SF", "SFR"}));
}

TEST(DoubleMetaphone, CaseInsensitiveAndTruncated) {
  for (const auto& row : reference_rows()) {
    std::string upper = row.word;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    ASSERT_EQ(double_metaphone(upper), double_metaphone(row.word)) << row.word;
    const auto full = double_metaphone(row.word, 64);
    const auto cut = double_metaphone(row.word);
    EXPECT_LE(cut.primary.size(), kMetaphoneMaxLength);
    EXPECT_EQ(cut.primary, full.primary.substr(0, kMetaphoneMaxLength)) << row.word;
    if (cut.alternate) EXPECT_NE(*cut.alternate, cut.primary);
  }
  EXPECT_EQ(double_metaphone("internationalisation", 64).primary, "ANTRNXNLSXN");
}

TEST(DoubleMetaphone, DegenerateInputs) {
  EXPECT_TRUE(double_metaphone("").empty());
  EXPECT_TRUE(double_metaphone("123").empty());
  EXPECT_EQ(double_metaphone("hh").primary, "");
}

TEST(FrequencyList, ParsesCommentsDuplicatesAndMalformedLines) {
  const auto list = parse_frequency_list(
      "# header line\n"
      "the\t500\n"
      "Of 3 200\n"
      "the 20\n"
      "ice-cream 7\n"
      "zero 0\n"
      "nofreq\n"
      "\n"
      "apple 200\n");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list.entries[0], (FrequencyEntry{"the", 520}));
  EXPECT_EQ(list.entries[1], (FrequencyEntry{"apple", 200}));
  EXPECT_EQ(list.entries[2], (FrequencyEntry{"of", 200}));
  EXPECT_EQ(list.skipped_lines, 3u);
}

TEST(FrequencyList, ExplicitColumn) {
  FrequencyListOptions opt;
  opt.frequency_column = 2;
  const auto list = parse_frequency_list("alpha 10 99\nbeta 30 1\n", "cols", opt);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list.entries[0], (FrequencyEntry{"beta", 30}));
  EXPECT_EQ(list.source, "cols");
}

TEST(FrequencyList, Errors) {
  EXPECT_THROW(parse_frequency_list("# nothing\n\nword\n"), DataError);
  EXPECT_THROW(load_frequency_list("/nonexistent/list.tsv"), DataError);
}

TEST(FrequencyList, BundledList) {
  const auto list = load_frequency_list(testing::data_path("english_freq.tsv"));
  EXPECT_EQ(list.size(), 7726u);
  EXPECT_EQ(list.skipped_lines, 0u);
  EXPECT_EQ(list.entries.front().term, "the");
  for (std::size_t i = 1; i < list.size(); ++i) {
    const auto& a = list.entries[i - 1];
    const auto& b = list.entries[i];
    ASSERT_TRUE(a.frequency > b.frequency || (a.frequency == b.frequency && a.term < b.term)) << b.term;
  }
}

TEST(MetaphoneIndex, PartitionsTheListByPrimaryCode) {
  const auto list = load_frequency_list(testing::data_path("english_freq.tsv"));
  const auto index = build_metaphone_index(list);
  EXPECT_EQ(index.term_count(), list.size());
  std::set<std::string> seen;
  for (const auto& [code, bucket] : index.buckets()) {
    ASSERT_FALSE(bucket.empty());
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      EXPECT_EQ(double_metaphone(bucket[i].term).primary, code);
      EXPECT_TRUE(seen.insert(bucket[i].term).second) << bucket[i].term;
      if (i > 0) {
        EXPECT_TRUE(bucket[i - 1].frequency > bucket[i].frequency ||
                    (bucket[i - 1].frequency == bucket[i].frequency && bucket[i - 1].term < bucket[i].term));
      }
    }
  }
  const auto ants = index.bucket("ANTS");
  EXPECT_TRUE(std::any_of(ants.begin(), ants.end(), [](const auto& e) { return e.term == "industry"; }));
  EXPECT_TRUE(index.bucket("QQQQ").empty());
  EXPECT_EQ(index.sound_alikes("creative").data(), index.bucket("KRTF").data());
}

TEST(MetaphoneIndex, SkipsNonAlphabeticTerms) {
  const std::vector<FrequencyEntry> entries{{"units", 5}, {"induced", 9}, {"b2b", 4}};
  const auto index = build_metaphone_index(make_frequency_list(entries));
  EXPECT_EQ(index.term_count(), 2u);
  ASSERT_EQ(index.bucket("ANTS").size(), 2u);
  EXPECT_EQ(index.bucket("ANTS")[0].term, "induced");
}

}  // namespace
}  // namespace topicnoise
