#include "termtag/match.hpp"

#include <algorithm>
#include <deque>

#include "termtag/error.hpp"
#include "termtag/random.hpp"
#include "termtag/unicode.hpp"

namespace termtag {
namespace {

std::uint64_t edge_key(std::uint32_t state, std::uint32_t symbol) {
  return (std::uint64_t{state} << 32) | symbol;
}

Tokens normalize_all(std::span<const std::string> tokens, CasingPolicy casing) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(normalize_token(t, casing));
  return out;
}

bool contains_normalized(std::span<const std::string> haystack, std::span<const std::string> needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

}  // namespace

CasingPolicy parse_casing_policy(std::string_view name) {
  if (name == "exact") return CasingPolicy::kExact;
  if (name == "insensitive") return CasingPolicy::kCaseInsensitive;
  throw Error("unknown casing policy '" + std::string(name) + "' (expected exact or insensitive)");
}

std::string_view to_string(CasingPolicy policy) {
  return policy == CasingPolicy::kExact ? "exact" : "insensitive";
}

std::string normalize_token(std::string_view token, CasingPolicy policy) {
  if (policy == CasingPolicy::kExact) return std::string(token);
  return unicode::fold_case(token);
}

ResolutionKind parse_resolution_kind(std::string_view name) {
  if (name == "train") return ResolutionKind::kTrainReferenceMatch;
  if (name == "test") return ResolutionKind::kTestRandom;
  throw Error("unknown resolution policy '" + std::string(name) + "' (expected train or test)");
}

Matcher::Matcher(Terminology terminology, CasingPolicy casing)
    : terminology_(std::move(terminology)), casing_(casing) {
  if (terminology_.empty()) throw Error("empty terminology");

  states_.emplace_back();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> children(1);
  std::string scratch;
  for (std::size_t e = 0; e < terminology_.size(); ++e) {
    std::uint32_t state = 0;
    for (const auto& token : terminology_.entries()[e].source_term) {
      if (casing_ == CasingPolicy::kExact) {
        scratch = token;
      } else {
        unicode::fold_case_into(token, scratch);
      }
      auto [sym_it, _] = symbols_.try_emplace(scratch, static_cast<std::uint32_t>(symbols_.size()));
      const std::uint32_t symbol = sym_it->second;
      auto [edge_it, inserted] = edges_.try_emplace(edge_key(state, symbol), static_cast<std::uint32_t>(states_.size()));
      if (inserted) {
        State next;
        next.depth = states_[state].depth + 1;
        states_.push_back(next);
        children.emplace_back();
        children[state].emplace_back(symbol, edge_it->second);
      }
      state = edge_it->second;
    }
    // Several entries may fold to the same pattern; the first one wins.
    if (state != 0 && states_[state].pattern == kNoPattern) {
      states_[state].pattern = static_cast<std::uint32_t>(pattern_entry_.size());
      states_[state].pattern_length = states_[state].depth;
      pattern_entry_.push_back(e);
    }
  }

  std::deque<std::uint32_t> queue;
  for (const auto& [symbol, child_state] : children[0]) {
    states_[child_state].fail = 0;
    queue.push_back(child_state);
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (const auto& [symbol, v] : children[u]) {
      std::uint32_t f = states_[u].fail;
      while (f != 0 && child(f, symbol) == 0) f = states_[f].fail;
      const std::uint32_t target = child(f, symbol);
      states_[v].fail = (target != v) ? target : 0;
      const std::uint32_t fv = states_[v].fail;
      states_[v].output_link = states_[fv].pattern != kNoPattern ? fv : states_[fv].output_link;
      queue.push_back(v);
    }
  }
}

std::uint32_t Matcher::child(std::uint32_t state, std::uint32_t symbol) const {
  auto it = edges_.find(edge_key(state, symbol));
  return it == edges_.end() ? 0 : it->second;
}

std::uint32_t Matcher::step(std::uint32_t state, std::uint32_t symbol) const {
  if (symbol == kNoSymbol) return 0;
  while (true) {
    if (const std::uint32_t next = child(state, symbol); next != 0) return next;
    if (state == 0) return 0;
    state = states_[state].fail;
  }
}

std::uint32_t Matcher::symbol_of(std::string_view token, std::string& scratch) const {
  if (casing_ == CasingPolicy::kExact) {
    scratch.assign(token);
  } else {
    unicode::fold_case_into(token, scratch);
  }
  auto it = symbols_.find(scratch);
  return it == symbols_.end() ? kNoSymbol : it->second;
}

void Matcher::intern_tokens(std::span<const std::string> tokens, std::vector<std::uint32_t>& out) const {
  out.clear();
  out.reserve(tokens.size());
  std::string scratch;
  for (const auto& t : tokens) out.push_back(symbol_of(t, scratch));
}

std::vector<TermMatch> Matcher::find_spans(std::span<const std::string> tokens) const {
  std::vector<TermMatch> result;
  const std::size_t n = tokens.size();
  if (n == 0) return result;

  std::vector<std::uint32_t> symbols;
  intern_tokens(tokens, symbols);

  // Longest pattern starting at each position.
  std::vector<std::uint32_t> longest(n, 0);
  std::vector<std::uint32_t> longest_pattern(n, kNoPattern);
  bool any = false;
  std::uint32_t state = 0;
  for (std::size_t i = 0; i < n; ++i) {
    state = step(state, symbols[i]);
    std::uint32_t out = states_[state].pattern != kNoPattern ? state : states_[state].output_link;
    while (out != 0) {
      const std::uint32_t length = states_[out].pattern_length;
      const std::size_t start = i + 1 - length;
      if (length > longest[start]) {
        longest[start] = length;
        longest_pattern[start] = states_[out].pattern;
      }
      any = true;
      out = states_[out].output_link;
    }
  }
  if (!any) return result;

  for (std::size_t i = 0; i < n;) {
    if (longest[i] == 0) {
      ++i;
      continue;
    }
    result.push_back(TermMatch{i, i + longest[i], pattern_entry_[longest_pattern[i]]});
    i += longest[i];
  }
  return result;
}

bool Matcher::has_match(std::span<const std::string> tokens) const {
  std::string scratch;
  std::uint32_t state = 0;
  for (const auto& t : tokens) {
    state = step(state, symbol_of(t, scratch));
    if (states_[state].pattern != kNoPattern || states_[state].output_link != 0) return true;
  }
  return false;
}

bool Matcher::contains_term(std::span<const std::string> term) const {
  if (term.empty()) return false;
  std::string scratch;
  std::uint32_t state = 0;
  for (const auto& t : term) {
    const std::uint32_t symbol = symbol_of(t, scratch);
    if (symbol == kNoSymbol) return false;
    state = child(state, symbol);
    if (state == 0) return false;
  }
  return states_[state].pattern != kNoPattern;
}

bool contains_sequence(std::span<const std::string> haystack, std::span<const std::string> needle,
                       CasingPolicy casing) {
  if (casing == CasingPolicy::kExact) return contains_normalized(haystack, needle);
  return contains_normalized(normalize_all(haystack, casing), normalize_all(needle, casing));
}

std::vector<ConstraintSpan> resolve_targets(std::span<const std::string> source,
                                            std::span<const TermMatch> matches,
                                            const Tokens* reference, const Matcher& matcher,
                                            const ResolutionPolicy& policy,
                                            std::uint64_t sentence_id) {
  std::vector<ConstraintSpan> spans;
  if (matches.empty()) return spans;
  const CasingPolicy casing = matcher.casing();

  if (policy.kind == ResolutionKind::kTrainReferenceMatch) {
    if (!reference) throw Error("reference-match resolution needs a reference translation");
    const Tokens folded_reference =
        casing == CasingPolicy::kExact ? Tokens{} : normalize_all(*reference, casing);
    const std::span<const std::string> haystack =
        casing == CasingPolicy::kExact ? std::span<const std::string>(*reference) : folded_reference;
    for (const auto& m : matches) {
      const auto& entry = matcher.entry(m.entry);
      for (const auto& variant : entry.target_variants) {
        const bool found = casing == CasingPolicy::kExact
                               ? contains_normalized(haystack, variant)
                               : contains_normalized(haystack, normalize_all(variant, casing));
        if (!found) continue;
        spans.push_back(ConstraintSpan{m.start, m.end, Tokens(source.begin() + m.start, source.begin() + m.end),
                                       variant});
        break;
      }
    }
    return spans;
  }

  Rng rng(derive_seed(policy.seed, sentence_id));
  for (const auto& m : matches) {
    const auto& variants = matcher.entry(m.entry).target_variants;
    std::uniform_int_distribution<std::size_t> pick(0, variants.size() - 1);
    spans.push_back(ConstraintSpan{m.start, m.end, Tokens(source.begin() + m.start, source.begin() + m.end),
                                   variants[pick(rng)]});
  }
  return spans;
}

}  // namespace termtag
