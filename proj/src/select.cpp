#include "termtag/select.hpp"

#include <algorithm>
#include <sstream>

#include "termtag/error.hpp"

namespace termtag {
namespace {

std::string with_thousands(std::size_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (i % 3) == lead % 3) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

nlohmann::json row_to_json(const CorpusStatsRow& row) {
  return {{"name", row.name}, {"sentences", row.sentence_count}, {"term_grounded", row.term_grounded_count}};
}

CorpusStatsRow row_from_json(const nlohmann::json& j) {
  CorpusStatsRow row;
  row.name = j.at("name").get<std::string>();
  row.sentence_count = j.at("sentences").get<std::size_t>();
  row.term_grounded_count = j.at("term_grounded").get<std::size_t>();
  if (row.term_grounded_count > row.sentence_count)
    throw Error("stats row '" + row.name + "' has more grounded than total sentences");
  return row;
}

}  // namespace

CorpusStatsRow CorpusStats::totals() const {
  CorpusStatsRow total{"#Total", 0, 0};
  for (const auto& r : rows) {
    total.sentence_count += r.sentence_count;
    total.term_grounded_count += r.term_grounded_count;
  }
  return total;
}

std::size_t count_grounded(std::span<const SentencePair> pairs, const Matcher& matcher) {
  return static_cast<std::size_t>(std::count_if(
      pairs.begin(), pairs.end(), [&](const SentencePair& p) { return matcher.has_match(p.source); }));
}

FilterResult term_grounded_filter(std::span<const SentencePair> pairs, const Matcher& matcher,
                                  std::string name) {
  FilterResult result;
  result.row.name = std::move(name);
  result.row.sentence_count = pairs.size();
  for (const auto& p : pairs)
    if (matcher.has_match(p.source)) result.grounded.push_back(p);
  result.row.term_grounded_count = result.grounded.size();
  return result;
}

CorpusStats corpus_stats(std::span<const NamedCorpus> corpora, const Matcher& matcher) {
  CorpusStats stats;
  for (const auto& c : corpora)
    stats.rows.push_back(CorpusStatsRow{c.name, c.pairs.size(), count_grounded(c.pairs, matcher)});
  return stats;
}

std::string render_stats_table(const CorpusStats& stats) {
  const std::string h0 = "Data type", h1 = "#sentences", h2 = "#term-grounded sentences";
  std::vector<CorpusStatsRow> all = stats.rows;
  all.push_back(stats.totals());
  std::size_t w0 = h0.size(), w1 = h1.size(), w2 = h2.size();
  for (const auto& r : all) {
    w0 = std::max(w0, r.name.size());
    w1 = std::max(w1, with_thousands(r.sentence_count).size());
    w2 = std::max(w2, with_thousands(r.term_grounded_count).size());
  }
  auto line = [&](std::ostringstream& os, const std::string& a, const std::string& b, const std::string& c) {
    os << a << std::string(w0 - a.size(), ' ') << "  " << std::string(w1 - b.size(), ' ') << b << "  "
       << std::string(w2 - c.size(), ' ') << c << '\n';
  };
  std::ostringstream os;
  line(os, h0, h1, h2);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i + 1 == all.size()) os << std::string(w0 + w1 + w2 + 4, '-') << '\n';
    line(os, all[i].name, with_thousands(all[i].sentence_count), with_thousands(all[i].term_grounded_count));
  }
  return os.str();
}

nlohmann::json stats_to_json(const CorpusStats& stats) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : stats.rows) rows.push_back(row_to_json(r));
  return {{"rows", std::move(rows)}, {"total", row_to_json(stats.totals())}};
}

CorpusStats stats_from_json(const nlohmann::json& json) {
  CorpusStats stats;
  try {
    for (const auto& r : json.at("rows")) stats.rows.push_back(row_from_json(r));
    if (json.contains("total")) {
      const auto total = row_from_json(json.at("total"));
      const auto expected = stats.totals();
      if (total.sentence_count != expected.sentence_count ||
          total.term_grounded_count != expected.term_grounded_count)
        throw Error("stats totals do not equal the column sums");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed stats: ") + e.what());
  }
  return stats;
}

std::vector<SentencePair> upsample(std::span<const SentencePair> pairs, std::size_t factor) {
  if (factor == 0) throw Error("up-sampling factor must be at least 1");
  std::vector<SentencePair> out;
  out.reserve(pairs.size() * factor);
  for (const auto& p : pairs) {
    for (std::size_t k = 0; k < factor; ++k) {
      out.push_back(p);
      out.back().id = out.size() - 1;
    }
  }
  return out;
}

}  // namespace termtag
