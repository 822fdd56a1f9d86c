#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termtag/match.hpp"
#include "termtag/types.hpp"

namespace termtag {

struct AnnotationScheme {
  std::string open_source_tag{kOpenSourceTag};
  std::string open_target_tag{kOpenTargetTag};
  std::string close_target_tag{kCloseTargetTag};
  std::string mask_token{kMaskToken};

  bool is_reserved(std::string_view token) const {
    return token == open_source_tag || token == open_target_tag || token == close_target_tag ||
           token == mask_token;
  }
  std::vector<std::string> symbols() const {
    return {open_source_tag, open_target_tag, close_target_tag, mask_token};
  }
};

// Throws "reserved symbol collision" if any token is a tag or mask symbol.
void check_no_reserved(std::span<const std::string> tokens, const AnnotationScheme& scheme);

// Each span becomes  <S> source... <C> target... </C>.
Tokens render_tada(std::span<const std::string> tokens, std::span<const ConstraintSpan> constraints,
                   const AnnotationScheme& scheme = {});

// Like render_tada, with every source token of a span replaced by MASK.
Tokens render_mask(std::span<const std::string> tokens, std::span<const ConstraintSpan> constraints,
                   const AnnotationScheme& scheme = {});

Tokens render(AnnotationMode mode, std::span<const std::string> tokens,
              std::span<const ConstraintSpan> constraints, const AnnotationScheme& scheme = {});

// A constraint read back from annotated text. start/end index the stripped
// token sequence; source_side is the span content (term tokens or a run of
// mask tokens).
struct RecoveredConstraint {
  std::size_t start = 0;
  std::size_t end = 0;
  Tokens source_side;
  Tokens target;

  bool operator==(const RecoveredConstraint&) const = default;
};

struct StrippedSentence {
  AnnotationMode mode = AnnotationMode::kPlain;
  Tokens tokens;
  std::vector<RecoveredConstraint> constraints;
};

// Removes the tag markup. The mode is TADA or MASK depending on whether the
// source sides hold mask tokens; mixing both in one sentence is an error, as
// is any dangling or misnested tag.
StrippedSentence strip_annotation(std::span<const std::string> annotated,
                                  const AnnotationScheme& scheme = {});

// Uniform seeded subset of `grounded` with size
// min(|grounded|, floor(rate * total)). Result is sorted.
std::vector<std::size_t> sample_for_annotation(std::size_t total,
                                               std::span<const std::size_t> grounded,
                                               double rate, std::uint64_t seed);

std::size_t annotation_budget(std::size_t total, double rate);

struct AnnotateOptions {
  AnnotationMode mode = AnnotationMode::kTada;
  ResolutionKind policy = ResolutionKind::kTrainReferenceMatch;
  double rate = 0.1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  AnnotationScheme scheme;
};

// Match and resolve one sentence. Throws on reserved symbols in the source or
// a missing reference under kTrainReferenceMatch.
std::vector<ConstraintSpan> constrain_sentence(const SentencePair& pair, const Matcher& matcher,
                                               const ResolutionPolicy& policy,
                                               const AnnotationScheme& scheme = {});

// Renders `pair` in `mode` when `annotate` is set and there is at least one
// constraint, otherwise produces a PLAIN record.
AnnotatedRecord make_record(SentencePair pair, std::vector<ConstraintSpan> constraints, bool annotate,
                            AnnotationMode mode, const AnnotationScheme& scheme = {});

// match -> resolve -> sample -> render. Records that are not sampled, or
// have no constraint, come out as PLAIN with no constraints. Output order
// equals input order and does not depend on the worker count.
std::vector<AnnotatedRecord> annotate_corpus(std::span<const SentencePair> pairs,
                                             const Matcher& matcher,
                                             const AnnotateOptions& options);

}  // namespace termtag
