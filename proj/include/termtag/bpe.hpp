#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "termtag/types.hpp"

namespace termtag {

inline constexpr std::string_view kContinuationMarker = "@@";

// Tags and the mask token; these are never segmented or merged.
std::vector<std::string> default_reserved_symbols();

// Ordered merge list. A merge's rank is its index.
class MergeTable {
 public:
  using Merge = std::pair<std::string, std::string>;

  MergeTable() = default;
  MergeTable(std::vector<Merge> merges, std::vector<std::string> reserved,
             std::string end_of_word_marker = {});

  const std::vector<Merge>& merges() const { return merges_; }
  const std::vector<std::string>& reserved() const { return reserved_; }
  // Empty when words carry no end-of-word symbol.
  const std::string& end_of_word_marker() const { return end_of_word_; }

  bool is_reserved(std::string_view symbol) const;
  // Rank of the merge (left, right), or -1.
  std::ptrdiff_t rank(std::string_view left, std::string_view right) const;

  bool operator==(const MergeTable& other) const {
    return merges_ == other.merges_ && reserved_ == other.reserved_ &&
           end_of_word_ == other.end_of_word_;
  }

 private:
  std::vector<Merge> merges_;
  std::vector<std::string> reserved_;
  std::string end_of_word_;
  std::unordered_set<std::string> reserved_set_;
  std::unordered_map<std::string, std::size_t> ranks_;
};

using WordFrequencies = std::map<std::string, std::uint64_t>;

// Counts whitespace-separated words of a pre-tokenized text stream.
WordFrequencies count_words(std::istream& in);

struct BpeLearnOptions {
  std::size_t num_merges = 40000;
  // Learning stops once the best pair occurs fewer times than this.
  std::uint64_t min_frequency = 2;
  // Appended to the last symbol of every word when non-empty.
  std::string end_of_word_marker;
  std::vector<std::string> reserved = default_reserved_symbols();
};

// Greedy merge learning. Each round merges the most frequent adjacent symbol
// pair; equal frequencies go to the lexicographically smallest (left, right).
// Reserved words are skipped and no merge touches or produces a reserved
// symbol.
MergeTable bpe_learn(const WordFrequencies& words, const BpeLearnOptions& options);

// Segments every non-reserved token. All pieces but the last one of a word
// carry the "@@" suffix.
Tokens bpe_apply(std::span<const std::string> tokens, const MergeTable& table);

// Memoizing front end for bulk segmentation. Not thread-safe; use one per
// worker.
class BpeSegmenter {
 public:
  explicit BpeSegmenter(const MergeTable& table) : table_(table) {}

  void apply(std::span<const std::string> tokens, Tokens& out);
  Tokens apply(std::span<const std::string> tokens);

 private:
  const std::vector<std::string>& segment(const std::string& word);

  const MergeTable& table_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

// Joins "@@"-continued pieces back into words. A trailing piece that still
// carries the marker is an error.
Tokens bpe_undo(std::span<const std::string> subwords);

// Format:
//   #version: 0.2
//   #reserved: <S> <C> </C> MASK
//   #end-of-word: </w>          (only when a marker is set)
//   left right                  (one merge per line, rank order)
void write_merge_table(const MergeTable& table, std::ostream& out);
MergeTable read_merge_table(std::istream& in);

}  // namespace termtag
