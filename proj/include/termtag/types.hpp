#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace termtag {

using Tokens = std::vector<std::string>;

// A source term together with every target rendering the dictionary allows.
// Variants keep the order in which they first appeared in the input file.
struct TermEntry {
  Tokens source_term;
  std::vector<Tokens> target_variants;

  bool operator==(const TermEntry&) const = default;
};

// Terminology dictionary. Source terms are unique; repeated source lines are
// folded into one entry's variant list and exact duplicate pairs are dropped.
class Terminology {
 public:
  Terminology() = default;
  explicit Terminology(std::string language_pair) : language_pair_(std::move(language_pair)) {}

  // Returns true when the (source, target) pair was new.
  bool add(const Tokens& source, const Tokens& target);

  const std::vector<TermEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t unique_pair_count() const;

  const TermEntry* find(const Tokens& source) const;

  const std::string& language_pair() const { return language_pair_; }
  void set_language_pair(std::string lp) { language_pair_ = std::move(lp); }

  bool operator==(const Terminology& other) const {
    return entries_ == other.entries_ && language_pair_ == other.language_pair_;
  }

 private:
  std::vector<TermEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string language_pair_;
};

struct SentencePair {
  std::size_t id = 0;
  Tokens source;
  std::optional<Tokens> target;

  bool operator==(const SentencePair&) const = default;
};

// A resolved constraint: half-open token range [start, end) of the source
// sentence, the surface tokens found there and the target selected for them.
struct ConstraintSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  Tokens source_term;
  Tokens chosen_target;

  std::size_t length() const { return end - start; }
  bool operator==(const ConstraintSpan&) const = default;
};

enum class AnnotationMode { kPlain, kTada, kMask };

std::string_view to_string(AnnotationMode mode);
AnnotationMode parse_annotation_mode(std::string_view text);

struct AnnotatedRecord {
  SentencePair pair;
  std::vector<ConstraintSpan> constraints;
  Tokens annotated_source;
  AnnotationMode mode = AnnotationMode::kPlain;

  bool operator==(const AnnotatedRecord&) const = default;
};

// Reserved symbols of the inline tag grammar.
inline constexpr std::string_view kOpenSourceTag = "<S>";
inline constexpr std::string_view kOpenTargetTag = "<C>";
inline constexpr std::string_view kCloseTargetTag = "</C>";
inline constexpr std::string_view kMaskToken = "MASK";

}  // namespace termtag
