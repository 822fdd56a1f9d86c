#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "termtag/bpe.hpp"
#include "termtag/error.hpp"

namespace termtag {
namespace {

using Merges = std::vector<MergeTable::Merge>;

const WordFrequencies kToy = {{"low", 5}, {"lower", 2}, {"newest", 6}, {"widest", 3}};

BpeLearnOptions options(std::size_t merges, std::string eow = {}) {
  BpeLearnOptions o;
  o.num_merges = merges;
  o.end_of_word_marker = std::move(eow);
  return o;
}

// Hand trace, no marker. Initial pair counts:
//   e s 9, s t 9, w e 8, l o 7, o w 7, n e 6, e w 6, w i 3, i d 3, d e 3, e r 2
//   1: (e,s) wins the tie at 9 against (s,t)
//   2: (es,t) 9
//   3: (l,o) wins the tie at 7 against (o,w)
//   4: (lo,w) 7, every other pair is at most 6
TEST(BpeLearn, ToyCorpusHandTraced) {
  const Merges expected = {{"e", "s"}, {"es", "t"}, {"l", "o"}, {"lo", "w"}};
  EXPECT_EQ(bpe_learn(kToy, options(4)).merges(), expected);
}

// Hand trace with "</w>" on the last symbol, so "low" ends in "w</w>".
//   1: (e,s) 9, tied with (s,t</w>)
//   2: (es,t</w>) 9
//   3: (l,o) 7; (w,e) fell to 2 once "newest" lost its free "e"
//   4: (e,w), (n,e) and (w,es) tie at 6; (e,w) is smallest
TEST(BpeLearn, ToyCorpusWithEndOfWordMarker) {
  const Merges expected = {{"e", "s"}, {"es", "t</w>"}, {"l", "o"}, {"e", "w"}};
  EXPECT_EQ(bpe_learn(kToy, options(4, "</w>")).merges(), expected);
}

TEST(BpeLearn, FirstMergeHasFrequencyNine) {
  // (e,s) occurs in newest (6) and widest (3).
  EXPECT_EQ(bpe_learn(kToy, options(1)).merges().front(), (MergeTable::Merge{"e", "s"}));
}

TEST(BpeLearn, SingleWordSinglePair) {
  auto o = options(1);
  o.min_frequency = 1;
  EXPECT_EQ(bpe_learn({{"aa", 1}}, o).merges(), (Merges{{"a", "a"}}));
}

TEST(BpeLearn, Preconditions) {
  EXPECT_THROW(bpe_learn(kToy, options(0)), Error);
  EXPECT_THROW(bpe_learn({}, options(3)), Error);
}

TEST(BpeLearn, ReservedNeverMerged) {
  const WordFrequencies words = {{"MASK", 50}, {"<S>", 50}, {"MAS", 10}, {"<C", 10}, {"abc", 3}};
  const auto table = bpe_learn(words, options(100));
  for (const auto& [l, r] : table.merges()) {
    EXPECT_FALSE(table.is_reserved(l));
    EXPECT_FALSE(table.is_reserved(r));
    EXPECT_FALSE(table.is_reserved(l + r)) << l << "+" << r;
  }
}

WordFrequencies random_words(std::mt19937_64& rng, std::size_t max_types) {
  static const std::vector<std::string> alphabet = {"a", "b", "c", "d", "é", "<", ">", "S", "M"};
  WordFrequencies words;
  std::uniform_int_distribution<std::size_t> types(1, max_types), len(1, 7), ch(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::uint64_t> freq(1, 9);
  for (std::size_t i = types(rng); i > 0; --i) {
    std::string w;
    for (std::size_t k = len(rng); k > 0; --k) w += alphabet[ch(rng)];
    words[w] += freq(rng);
  }
  return words;
}

TEST(BpeLearnProperty, MatchesPairRecountOracle) {
  std::mt19937_64 rng(5);
  const auto reserved_list = default_reserved_symbols();
  const std::set<std::string> reserved(reserved_list.begin(), reserved_list.end());
  for (int round = 0; round < 400; ++round) {
    const auto words = random_words(rng, 50);
    for (const std::string eow : {"", "</w>"}) {
      for (std::uint64_t min_freq : {1, 2}) {
        auto o = options(1 + rng() % 40, eow);
        o.min_frequency = min_freq;
        const auto table = bpe_learn(words, o);
        const auto expected = oracle::naive_bpe(words, o.num_merges, min_freq, eow, reserved);
        ASSERT_EQ(table.merges(), expected.merges) << "round " << round;
        EXPECT_LE(table.merges().size(), o.num_merges);
      }
    }
  }
}

MergeTable toy_table() { return bpe_learn(kToy, options(20)); }

TEST(BpeApply, TagsUntouchedAndWordsSegmented) {
  const MergeTable table({{"v", "a"}, {"va", "c"}, {"c", "i"}, {"ci", "n"}}, default_reserved_symbols());
  const Tokens in = {"<S>", "MASK", "<C>", "vaccin", "</C>"};
  EXPECT_EQ(bpe_apply(in, table), (Tokens{"<S>", "MASK", "<C>", "vac@@", "cin", "</C>"}));
}

TEST(BpeApply, LearnedSymbolUnchanged) {
  const auto table = toy_table();
  EXPECT_EQ(bpe_apply(Tokens{"low"}, table), (Tokens{"low"}));
  EXPECT_EQ(bpe_apply(Tokens{"newest"}, table), (Tokens{"newest"}));
}

TEST(BpeApply, EndOfWordMarkerStripped) {
  const auto table = bpe_learn(kToy, options(4, "</w>"));
  EXPECT_EQ(bpe_apply(Tokens{"lowest"}, table), (Tokens{"lo@@", "w@@", "est"}));
}

TEST(BpeUndo, Basics) {
  EXPECT_EQ(bpe_undo(Tokens{"vac@@", "cin"}), (Tokens{"vaccin"}));
  EXPECT_EQ(bpe_undo(Tokens{"MASK"}), (Tokens{"MASK"}));
  EXPECT_THROW(bpe_undo(Tokens{"a", "vac@@"}), Error);
}

TEST(BpeProperty, UndoInvertsApply) {
  std::mt19937_64 rng(17);
  for (const std::string eow : {"", "</w>"}) {
    const auto table = bpe_learn(random_words(rng, 50), options(60, eow));
    BpeSegmenter seg(table);
    for (int i = 0; i < 2000; ++i) {
      Tokens toks;
      for (const auto& [w, f] : random_words(rng, 6)) toks.push_back(w);
      toks.push_back(default_reserved_symbols()[rng() % 4]);
      const Tokens pieces = seg.apply(toks);
      EXPECT_EQ(pieces, bpe_apply(toks, table));
      EXPECT_EQ(bpe_undo(pieces), toks);
      for (const auto& r : default_reserved_symbols()) {
        const auto in_count = std::count(toks.begin(), toks.end(), r);
        EXPECT_EQ(std::count(pieces.begin(), pieces.end(), r), in_count);
      }
    }
  }
}

TEST(MergeTableIo, RoundTrip) {
  for (const std::string eow : {"", "</w>"}) {
    const auto table = bpe_learn(kToy, options(10, eow));
    std::stringstream buf;
    write_merge_table(table, buf);
    EXPECT_EQ(read_merge_table(buf), table);
  }
  std::istringstream bad("#version: 0.2\n#reserved: MASK\nMA SK\n");
  EXPECT_THROW(read_merge_table(bad), Error);
}

}  // namespace
}  // namespace termtag
