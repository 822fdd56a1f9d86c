#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "termtag/types.hpp"

namespace termtag {

enum class CasingPolicy { kExact, kCaseInsensitive };

CasingPolicy parse_casing_policy(std::string_view name);
std::string_view to_string(CasingPolicy policy);

// Applies the casing policy to a single token.
std::string normalize_token(std::string_view token, CasingPolicy policy);

// Token-level match of a dictionary source term: [start, end) plus the index
// of the matched entry in the matcher's terminology.
struct TermMatch {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t entry = 0;

  bool operator==(const TermMatch&) const = default;
};

// Aho-Corasick automaton over interned tokens, built from every source term
// of a terminology. Immutable once constructed.
class Matcher {
 public:
  Matcher(Terminology terminology, CasingPolicy casing = CasingPolicy::kCaseInsensitive);

  // Leftmost-longest non-overlapping cover of `tokens`, sorted by start.
  std::vector<TermMatch> find_spans(std::span<const std::string> tokens) const;

  bool contains_term(std::span<const std::string> term) const;
  bool has_match(std::span<const std::string> tokens) const;

  std::size_t pattern_count() const { return pattern_entry_.size(); }
  CasingPolicy casing() const { return casing_; }
  const Terminology& terminology() const { return terminology_; }
  const TermEntry& entry(std::size_t index) const { return terminology_.entries()[index]; }

 private:
  static constexpr std::uint32_t kNoSymbol = UINT32_MAX;
  static constexpr std::uint32_t kNoPattern = UINT32_MAX;

  struct State {
    std::uint32_t fail = 0;
    std::uint32_t depth = 0;
    // Length of the longest pattern ending exactly here, 0 if none.
    std::uint32_t pattern_length = 0;
    std::uint32_t pattern = kNoPattern;
    // Nearest proper suffix state that ends a pattern.
    std::uint32_t output_link = 0;
  };

  std::uint32_t symbol_of(std::string_view token, std::string& scratch) const;
  std::uint32_t child(std::uint32_t state, std::uint32_t symbol) const;
  std::uint32_t step(std::uint32_t state, std::uint32_t symbol) const;
  void intern_tokens(std::span<const std::string> tokens, std::vector<std::uint32_t>& out) const;

  Terminology terminology_;
  CasingPolicy casing_;
  std::unordered_map<std::string, std::uint32_t> symbols_;
  std::vector<State> states_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  // Pattern index -> terminology entry.
  std::vector<std::size_t> pattern_entry_;
};

enum class ResolutionKind {
  kTrainReferenceMatch,  // pick the first variant found in the reference
  kTestRandom,           // pick a variant uniformly at random
};

struct ResolutionPolicy {
  ResolutionKind kind = ResolutionKind::kTrainReferenceMatch;
  std::uint64_t seed = 0;
};

ResolutionKind parse_resolution_kind(std::string_view name);

// True if `needle` occurs as a contiguous run in `haystack` under `casing`.
bool contains_sequence(std::span<const std::string> haystack, std::span<const std::string> needle,
                       CasingPolicy casing);

// Turns raw matches into constraints. Under kTrainReferenceMatch `reference`
// is required and matches with no variant in it are dropped. Under
// kTestRandom the draws come from a generator seeded by (policy.seed,
// sentence_id), one draw per match in sentence order.
std::vector<ConstraintSpan> resolve_targets(std::span<const std::string> source,
                                            std::span<const TermMatch> matches,
                                            const Tokens* reference, const Matcher& matcher,
                                            const ResolutionPolicy& policy,
                                            std::uint64_t sentence_id);

}  // namespace termtag
