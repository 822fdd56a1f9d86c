#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "termtag/match.hpp"
#include "termtag/types.hpp"

namespace termtag {

struct CorpusStatsRow {
  std::string name;
  std::size_t sentence_count = 0;
  std::size_t term_grounded_count = 0;

  bool operator==(const CorpusStatsRow&) const = default;
};

struct CorpusStats {
  std::vector<CorpusStatsRow> rows;

  CorpusStatsRow totals() const;
  bool operator==(const CorpusStats&) const = default;
};

struct FilterResult {
  std::vector<SentencePair> grounded;
  CorpusStatsRow row;
};

// Keeps the pairs whose source contains at least one dictionary term. Ids
// are kept as they were.
FilterResult term_grounded_filter(std::span<const SentencePair> pairs, const Matcher& matcher,
                                  std::string name = {});

std::size_t count_grounded(std::span<const SentencePair> pairs, const Matcher& matcher);

struct NamedCorpus {
  std::string name;
  std::vector<SentencePair> pairs;
};

CorpusStats corpus_stats(std::span<const NamedCorpus> corpora, const Matcher& matcher);

std::string render_stats_table(const CorpusStats& stats);
nlohmann::json stats_to_json(const CorpusStats& stats);
// Throws if the stored totals disagree with the rows.
CorpusStats stats_from_json(const nlohmann::json& json);

// Repeats every pair `factor` times (copies adjacent), renumbering ids from 0.
std::vector<SentencePair> upsample(std::span<const SentencePair> pairs, std::size_t factor);

}  // namespace termtag
