#include "termtag/bpe.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "termtag/error.hpp"
#include "termtag/tokenize.hpp"
#include "termtag/unicode.hpp"

namespace termtag {
namespace {

constexpr std::string_view kVersionHeader = "#version: 0.2";
constexpr std::string_view kReservedHeader = "#reserved:";
constexpr std::string_view kEndOfWordHeader = "#end-of-word: ";

std::string merge_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back('\0');
  key.append(right);
  return key;
}

std::vector<std::string> initial_symbols(std::string_view word, const std::string& end_of_word) {
  std::vector<std::string> symbols;
  unicode::for_each_code_point(word, [&](char32_t, std::string_view bytes) { symbols.emplace_back(bytes); });
  if (!symbols.empty() && !end_of_word.empty()) symbols.back() += end_of_word;
  return symbols;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Incremental pair statistics for greedy merge learning.
class MergeLearner {
 public:
  MergeLearner(const WordFrequencies& words, const BpeLearnOptions& options)
      : options_(options),
        reserved_(options.reserved.begin(), options.reserved.end()),
        candidates_(CandidateOrder{&symbols_}) {
    for (const auto& [word, freq] : words) {
      if (freq == 0) throw Error("word frequencies must be positive");
      if (word.empty() || reserved_.count(word)) continue;
      Word w;
      w.freq = freq;
      for (const auto& s : initial_symbols(word, options.end_of_word_marker)) w.symbols.push_back(intern(s));
      words_.push_back(std::move(w));
    }
    visited_.assign(words_.size(), 0);
    for (std::uint32_t i = 0; i < words_.size(); ++i) add_pairs(i, /*index=*/true);
  }

  std::vector<MergeTable::Merge> run() {
    std::vector<MergeTable::Merge> merges;
    while (merges.size() < options_.num_merges && !candidates_.empty()) {
      const Candidate best = *candidates_.begin();
      if (static_cast<std::uint64_t>(best.count) < options_.min_frequency) break;
      merges.emplace_back(symbols_[best.left], symbols_[best.right]);
      merge(best.left, best.right, static_cast<std::uint32_t>(merges.size()));
    }
    return merges;
  }

 private:
  struct Word {
    std::vector<std::uint32_t> symbols;
    std::uint64_t freq = 0;
  };
  struct Candidate {
    std::int64_t count;
    std::uint32_t left;
    std::uint32_t right;
  };
  struct CandidateOrder {
    const std::vector<std::string>* symbols;
    bool operator()(const Candidate& a, const Candidate& b) const {
      if (a.count != b.count) return a.count > b.count;
      const auto& s = *symbols;
      if (a.left != b.left) {
        const int c = s[a.left].compare(s[b.left]);
        if (c != 0) return c < 0;
      }
      return s[a.right] < s[b.right];
    }
  };

  static std::uint64_t key(std::uint32_t l, std::uint32_t r) { return (std::uint64_t{l} << 32) | r; }

  std::uint32_t intern(const std::string& s) {
    auto [it, inserted] = symbol_ids_.try_emplace(s, static_cast<std::uint32_t>(symbols_.size()));
    if (inserted) symbols_.push_back(s);
    return it->second;
  }

  bool eligible(std::uint32_t l, std::uint32_t r) {
    const auto k = key(l, r);
    auto it = eligible_.find(k);
    if (it != eligible_.end()) return it->second;
    const bool ok = !reserved_.count(symbols_[l]) && !reserved_.count(symbols_[r]) &&
                    !reserved_.count(symbols_[l] + symbols_[r]);
    eligible_.emplace(k, ok);
    return ok;
  }

  void update(std::uint32_t l, std::uint32_t r, std::int64_t delta) {
    auto& count = counts_[key(l, r)];
    const bool ok = eligible(l, r);
    if (ok && count > 0) candidates_.erase(Candidate{count, l, r});
    count += delta;
    if (ok && count > 0) candidates_.insert(Candidate{count, l, r});
  }

  void add_pairs(std::uint32_t w, bool index, std::uint32_t only_with = UINT32_MAX) {
    const auto& syms = words_[w].symbols;
    const auto freq = static_cast<std::int64_t>(words_[w].freq);
    for (std::size_t k = 0; k + 1 < syms.size(); ++k) {
      update(syms[k], syms[k + 1], freq);
      if (index && (only_with == UINT32_MAX || syms[k] == only_with || syms[k + 1] == only_with))
        where_[key(syms[k], syms[k + 1])].push_back(w);
    }
  }

  void remove_pairs(std::uint32_t w) {
    const auto& syms = words_[w].symbols;
    const auto freq = static_cast<std::int64_t>(words_[w].freq);
    for (std::size_t k = 0; k + 1 < syms.size(); ++k) update(syms[k], syms[k + 1], -freq);
  }

  void merge(std::uint32_t l, std::uint32_t r, std::uint32_t round) {
    const std::uint32_t merged = intern(symbols_[l] + symbols_[r]);
    const auto k = key(l, r);
    auto list = std::move(where_[k]);
    where_.erase(k);
    for (std::uint32_t w : list) {
      if (visited_[w] == round) continue;
      visited_[w] = round;
      auto& syms = words_[w].symbols;
      bool present = false;
      for (std::size_t i = 0; i + 1 < syms.size() && !present; ++i) present = syms[i] == l && syms[i + 1] == r;
      if (!present) continue;
      remove_pairs(w);
      std::vector<std::uint32_t> next;
      next.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == l && syms[i + 1] == r) {
          next.push_back(merged);
          ++i;
        } else {
          next.push_back(syms[i]);
        }
      }
      syms = std::move(next);
      add_pairs(w, /*index=*/true, merged);
    }
    // A pair is merged at most once, even if it reappears through another
    // route to the same symbols.
    if (auto it = counts_.find(k); it != counts_.end() && it->second > 0)
      candidates_.erase(Candidate{it->second, l, r});
    eligible_[k] = false;
  }

  const BpeLearnOptions& options_;
  std::unordered_set<std::string> reserved_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> symbol_ids_;
  std::vector<Word> words_;
  std::vector<std::uint32_t> visited_;
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  std::unordered_map<std::uint64_t, bool> eligible_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> where_;
  std::set<Candidate, CandidateOrder> candidates_;
};

}  // namespace

std::vector<std::string> default_reserved_symbols() {
  return {std::string(kOpenSourceTag), std::string(kOpenTargetTag), std::string(kCloseTargetTag),
          std::string(kMaskToken)};
}

MergeTable::MergeTable(std::vector<Merge> merges, std::vector<std::string> reserved,
                       std::string end_of_word_marker)
    : merges_(std::move(merges)), end_of_word_(std::move(end_of_word_marker)) {
  for (auto& r : reserved) {
    if (r.empty()) throw Error("empty reserved symbol");
    if (reserved_set_.insert(r).second) reserved_.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    const auto& [left, right] = merges_[i];
    if (left.empty() || right.empty()) throw Error("merge " + std::to_string(i) + " has an empty symbol");
    if (is_reserved(left) || is_reserved(right) || is_reserved(left + right))
      throw Error("merge " + std::to_string(i) + " involves a reserved symbol");
    ranks_.try_emplace(merge_key(left, right), i);
  }
}

bool MergeTable::is_reserved(std::string_view symbol) const {
  return reserved_set_.count(std::string(symbol)) > 0;
}

std::ptrdiff_t MergeTable::rank(std::string_view left, std::string_view right) const {
  auto it = ranks_.find(merge_key(left, right));
  return it == ranks_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

WordFrequencies count_words(std::istream& in) {
  WordFrequencies counts;
  std::string line;
  Tokens tokens;
  while (std::getline(in, line)) {
    tokens.clear();
    tokenize_into(line, TokenizerScheme{}, tokens);
    for (auto& t : tokens) ++counts[t];
  }
  return counts;
}

MergeTable bpe_learn(const WordFrequencies& words, const BpeLearnOptions& options) {
  if (options.num_merges == 0) throw Error("num_merges must be at least 1");
  if (words.empty()) throw Error("empty corpus");
  MergeLearner learner(words, options);
  return MergeTable(learner.run(), options.reserved, options.end_of_word_marker);
}

const std::vector<std::string>& BpeSegmenter::segment(const std::string& word) {
  if (auto it = cache_.find(word); it != cache_.end()) return it->second;

  std::vector<std::string> symbols = initial_symbols(word, table_.end_of_word_marker());
  while (symbols.size() > 1) {
    std::ptrdiff_t best = -1;
    std::size_t best_pos = 0;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      const auto r = table_.rank(symbols[i], symbols[i + 1]);
      if (r >= 0 && (best < 0 || r < best)) {
        best = r;
        best_pos = i;
      }
    }
    if (best < 0) break;
    const auto& [left, right] = table_.merges()[static_cast<std::size_t>(best)];
    std::vector<std::string> next;
    next.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i >= best_pos && i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
        next.push_back(symbols[i] + symbols[i + 1]);
        ++i;
      } else {
        next.push_back(std::move(symbols[i]));
      }
    }
    symbols = std::move(next);
  }
  const auto& eow = table_.end_of_word_marker();
  if (!eow.empty() && !symbols.empty() && ends_with(symbols.back(), eow))
    symbols.back().resize(symbols.back().size() - eow.size());
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) symbols[i] += kContinuationMarker;
  return cache_.emplace(word, std::move(symbols)).first->second;
}

void BpeSegmenter::apply(std::span<const std::string> tokens, Tokens& out) {
  for (const auto& token : tokens) {
    if (token.empty() || table_.is_reserved(token)) {
      out.push_back(token);
      continue;
    }
    const auto& pieces = segment(token);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
}

Tokens BpeSegmenter::apply(std::span<const std::string> tokens) {
  Tokens out;
  apply(tokens, out);
  return out;
}

Tokens bpe_apply(std::span<const std::string> tokens, const MergeTable& table) {
  BpeSegmenter segmenter(table);
  return segmenter.apply(tokens);
}

Tokens bpe_undo(std::span<const std::string> subwords) {
  Tokens out;
  std::string pending;
  bool open = false;
  for (const auto& piece : subwords) {
    if (ends_with(piece, kContinuationMarker)) {
      pending.append(piece, 0, piece.size() - kContinuationMarker.size());
      open = true;
      continue;
    }
    pending.append(piece);
    out.push_back(std::move(pending));
    pending.clear();
    open = false;
  }
  if (open) throw Error("dangling continuation marker at end of sequence");
  return out;
}

void write_merge_table(const MergeTable& table, std::ostream& out) {
  out << kVersionHeader << '\n' << kReservedHeader;
  for (const auto& r : table.reserved()) out << ' ' << r;
  out << '\n';
  if (!table.end_of_word_marker().empty()) out << kEndOfWordHeader << table.end_of_word_marker() << '\n';
  for (const auto& [left, right] : table.merges()) out << left << ' ' << right << '\n';
  if (!out) throw Error("write failed");
}

MergeTable read_merge_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kVersionHeader)
    throw Error("merge table: expected '" + std::string(kVersionHeader) + "' header");
  ++line_no;
  std::vector<std::string> reserved;
  std::string end_of_word;
  std::vector<MergeTable::Merge> merges;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "merge table line " + std::to_string(line_no) + ": ";
    if (merges.empty() && line.starts_with(kReservedHeader)) {
      reserved = split_on_space(std::string_view(line).substr(kReservedHeader.size()));
      continue;
    }
    if (merges.empty() && line.starts_with(kEndOfWordHeader)) {
      end_of_word = line.substr(kEndOfWordHeader.size());
      continue;
    }
    if (line.starts_with('#')) throw Error(where + "unexpected header");
    const auto space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string::npos)
      throw Error(where + "expected 'left right'");
    merges.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  return MergeTable(std::move(merges), std::move(reserved), std::move(end_of_word));
}

}  // namespace termtag
