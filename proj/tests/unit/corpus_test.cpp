#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "termtag/augment.hpp"
#include "termtag/corpus.hpp"
#include "termtag/error.hpp"

namespace termtag {
namespace {

Terminology load(const std::string& text) {
  std::istringstream in(text);
  return load_terminology(in);
}

std::string error_of(const std::string& text) {
  try {
    load(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(LoadTerminology, DistinctEntries) {
  const auto t = load("vaccine\tvaccin\nvaccines\tvaccins");
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.unique_pair_count(), 2u);
}

TEST(LoadTerminology, RepeatedSourceMergesVariants) {
  const auto t = load("T\tA\nT\tB\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.entries()[0].target_variants, (std::vector<Tokens>{{"A"}, {"B"}}));
  EXPECT_EQ(t.unique_pair_count(), 2u);
}

TEST(LoadTerminology, DuplicatePairDropped) {
  const auto t = load("T\tA\nT\tA\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.unique_pair_count(), 1u);
}

TEST(LoadTerminology, MultiTokenTerms) {
  const auto t = load(oracle::kMultiTermTerminology);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.entries()[2].source_term, (Tokens{"Coronavirus", "outbreak"}));
  EXPECT_EQ(t.entries()[2].target_variants[0], (Tokens{"épidémie", "de", "coronavirus"}));
}

TEST(LoadTerminology, Errors) {
  EXPECT_EQ(error_of(""), "empty terminology");
  EXPECT_EQ(error_of("\n\n"), "empty terminology");
  EXPECT_NE(error_of("a\tb\nnotab\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("\tb\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("a\t \n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("a\tb\tc\n").find("line 1"), std::string::npos);
}

TEST(LoadTerminology, NfcNormalizes) {
  const auto t = load("e\xcc\x81pide\xcc\x81mie\tx\n");
  EXPECT_EQ(t.entries()[0].source_term[0], "épidémie");
}

TEST(TerminologyProperty, SerializationIsIdempotent) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    std::ostringstream tsv;
    std::set<std::pair<std::string, std::string>> unique_lines;
    std::uniform_int_distribution<int> lines(1, 30);
    for (int i = lines(rng); i > 0; --i) {
      const auto s = oracle::spaced(oracle::random_tokens(rng, 1, 3, 6));
      const auto t = oracle::spaced(oracle::random_tokens(rng, 1, 2, 4));
      tsv << s << '\t' << t << '\n';
      unique_lines.emplace(s, t);
    }
    const auto loaded = load(tsv.str());
    EXPECT_EQ(loaded.unique_pair_count(), unique_lines.size());
    std::ostringstream out;
    write_terminology(loaded, out);
    EXPECT_EQ(load(out.str()), loaded);
  }
}

TEST(LoadParallel, CountsAndErrors) {
  {
    std::istringstream s(""), t("");
    EXPECT_TRUE(load_parallel(s, t).empty());
  }
  {
    std::istringstream s("a\nb\nc\n"), t("x\ny\n");
    try {
      load_parallel(s, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_STREQ(e.what(), "line count mismatch 3 vs 2");
    }
  }
  {
    std::istringstream s("a\n\nc\n"), t("x\ny\nz\n");
    try {
      load_parallel(s, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
  }
  {
    std::ostringstream src, tgt;
    for (int i = 0; i < 971; ++i) {
      src << "source " << i << '\n';
      tgt << "target " << i << '\n';
    }
    std::istringstream s(src.str()), t(tgt.str());
    const auto pairs = load_parallel(s, t);
    ASSERT_EQ(pairs.size(), 971u);
    EXPECT_EQ(pairs[970].id, 970u);
    EXPECT_EQ(*pairs[5].target, (Tokens{"target", "5"}));
  }
}

AnnotatedRecord record_of(std::size_t id, const std::string& src, std::vector<ConstraintSpan> cs,
                          AnnotationMode mode) {
  SentencePair pair{id, oracle::words(src), std::nullopt};
  return make_record(std::move(pair), std::move(cs), mode != AnnotationMode::kPlain, mode);
}

TEST(WriteRecords, SingleTermAndPlain) {
  const auto tada = record_of(0, oracle::kSingleTermSource, {{5, 6, {"SARS-CoV"}, {"SARS-CoV"}}},
                              AnnotationMode::kTada);
  const auto plain = record_of(1, "hello world .", {}, AnnotationMode::kPlain);
  std::ostringstream text, side;
  const std::vector<AnnotatedRecord> records = {tada, plain};
  write_records(records, text, &side);
  EXPECT_EQ(text.str(), oracle::kSingleTermTada + "\nhello world .\n");
  std::istringstream text_in(text.str()), side_in(side.str());
  EXPECT_EQ(read_records(text_in, side_in), records);
}

TEST(RecordsProperty, RoundTrip) {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 500; ++round) {
    std::vector<AnnotatedRecord> records;
    std::ostringstream targets;
    for (std::size_t id = 0; id < 8; ++id) {
      SentencePair pair{id, oracle::random_tokens(rng, 1, 12, 20), oracle::random_tokens(rng, 1, 6, 20)};
      targets << oracle::spaced(*pair.target) << '\n';
      std::vector<ConstraintSpan> cs;
      for (std::size_t i = 0; i < pair.source.size(); ++i) {
        if (rng() % 4) continue;
        const std::size_t len = 1 + std::min<std::size_t>(rng() % 3, pair.source.size() - i - 1);
        cs.push_back({i, i + len, Tokens(pair.source.begin() + i, pair.source.begin() + i + len),
                      oracle::random_tokens(rng, 1, 3, 9)});
        i += len;
      }
      const auto mode = static_cast<AnnotationMode>(rng() % 3);
      records.push_back(make_record(std::move(pair), std::move(cs), mode != AnnotationMode::kPlain, mode));
    }
    std::ostringstream text, side;
    write_records(records, text, &side);
    std::istringstream text_in(text.str()), side_in(side.str()), target_in(targets.str());
    EXPECT_EQ(read_records(text_in, side_in, &target_in), records);
  }
}

TEST(ReadRecords, RejectsDisagreeingSidecar) {
  std::istringstream text("a <S> b <C> c </C>\n");
  std::istringstream side(R"({"id":0,"mode":"mask","constraints":[]})" "\n");
  EXPECT_THROW(read_records(text, side), Error);
}

}  // namespace
}  // namespace termtag
