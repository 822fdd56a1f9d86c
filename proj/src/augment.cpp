#include "termtag/augment.hpp"

#include <algorithm>
#include <cmath>

#include "termtag/error.hpp"
#include "termtag/parallel.hpp"
#include "termtag/random.hpp"

namespace termtag {
namespace {

// Stream index reserved for the annotation sampler; per-sentence resolution
// streams use the sentence id.
constexpr std::uint64_t kSamplerStream = 0xa11ce5a3d1e5ULL;

std::string at_token(std::size_t index) { return " at token " + std::to_string(index); }

void validate_constraints(std::span<const std::string> tokens, std::span<const ConstraintSpan> constraints,
                          const AnnotationScheme& scheme) {
  check_no_reserved(tokens, scheme);
  std::size_t previous_end = 0;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    if (c.start >= c.end || c.end > tokens.size())
      throw Error("constraint " + std::to_string(k) + " is out of range");
    if (k > 0 && c.start < previous_end)
      throw Error("overlapping or unsorted constraints at index " + std::to_string(k));
    if (c.chosen_target.empty()) throw Error("constraint " + std::to_string(k) + " has an empty target");
    check_no_reserved(c.chosen_target, scheme);
    previous_end = c.end;
  }
}

template <typename SourceSide>
Tokens render_with(std::span<const std::string> tokens, std::span<const ConstraintSpan> constraints,
                   const AnnotationScheme& scheme, SourceSide&& source_side) {
  validate_constraints(tokens, constraints, scheme);
  Tokens out;
  std::size_t extra = 0;
  for (const auto& c : constraints) extra += 3 + c.chosen_target.size();
  out.reserve(tokens.size() + extra);
  std::size_t pos = 0;
  for (const auto& c : constraints) {
    out.insert(out.end(), tokens.begin() + pos, tokens.begin() + c.start);
    out.push_back(scheme.open_source_tag);
    source_side(out, c);
    out.push_back(scheme.open_target_tag);
    out.insert(out.end(), c.chosen_target.begin(), c.chosen_target.end());
    out.push_back(scheme.close_target_tag);
    pos = c.end;
  }
  out.insert(out.end(), tokens.begin() + pos, tokens.end());
  return out;
}

}  // namespace

void check_no_reserved(std::span<const std::string> tokens, const AnnotationScheme& scheme) {
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (scheme.is_reserved(tokens[i]))
      throw Error("reserved symbol collision: '" + tokens[i] + "'" + at_token(i));
}

Tokens render_tada(std::span<const std::string> tokens, std::span<const ConstraintSpan> constraints,
                   const AnnotationScheme& scheme) {
  return render_with(tokens, constraints, scheme, [&](Tokens& out, const ConstraintSpan& c) {
    out.insert(out.end(), tokens.begin() + c.start, tokens.begin() + c.end);
  });
}

Tokens render_mask(std::span<const std::string> tokens, std::span<const ConstraintSpan> constraints,
                   const AnnotationScheme& scheme) {
  return render_with(tokens, constraints, scheme, [&](Tokens& out, const ConstraintSpan& c) {
    out.insert(out.end(), c.length(), scheme.mask_token);
  });
}

Tokens render(AnnotationMode mode, std::span<const std::string> tokens,
              std::span<const ConstraintSpan> constraints, const AnnotationScheme& scheme) {
  switch (mode) {
    case AnnotationMode::kTada: return render_tada(tokens, constraints, scheme);
    case AnnotationMode::kMask: return render_mask(tokens, constraints, scheme);
    case AnnotationMode::kPlain: break;
  }
  return Tokens(tokens.begin(), tokens.end());
}

StrippedSentence strip_annotation(std::span<const std::string> annotated, const AnnotationScheme& scheme) {
  StrippedSentence result;
  bool any_masked = false;
  bool any_plain = false;
  std::size_t i = 0;
  const std::size_t n = annotated.size();
  while (i < n) {
    const std::string& token = annotated[i];
    if (token == scheme.open_source_tag) {
      const std::size_t open_at = i++;
      RecoveredConstraint rc;
      rc.start = result.tokens.size();
      std::size_t masks = 0;
      while (i < n && annotated[i] != scheme.open_target_tag) {
        if (annotated[i] == scheme.open_source_tag || annotated[i] == scheme.close_target_tag)
          throw Error("misnested tag '" + annotated[i] + "'" + at_token(i));
        if (annotated[i] == scheme.mask_token) ++masks;
        rc.source_side.push_back(annotated[i++]);
      }
      if (i == n) throw Error("unterminated '" + scheme.open_source_tag + "'" + at_token(open_at));
      if (rc.source_side.empty()) throw Error("empty source side" + at_token(open_at));
      if (masks != 0 && masks != rc.source_side.size())
        throw Error("partially masked constraint" + at_token(open_at));
      const std::size_t target_at = i++;
      while (i < n && annotated[i] != scheme.close_target_tag) {
        if (scheme.is_reserved(annotated[i]))
          throw Error("misnested tag '" + annotated[i] + "'" + at_token(i));
        rc.target.push_back(annotated[i++]);
      }
      if (i == n) throw Error("unterminated '" + scheme.open_target_tag + "'" + at_token(target_at));
      if (rc.target.empty()) throw Error("empty target side" + at_token(target_at));
      ++i;
      (masks ? any_masked : any_plain) = true;
      result.tokens.insert(result.tokens.end(), rc.source_side.begin(), rc.source_side.end());
      rc.end = result.tokens.size();
      result.constraints.push_back(std::move(rc));
      continue;
    }
    if (token == scheme.open_target_tag || token == scheme.close_target_tag)
      throw Error("dangling tag '" + token + "'" + at_token(i));
    if (token == scheme.mask_token) throw Error("mask token outside a constraint" + at_token(i));
    result.tokens.push_back(token);
    ++i;
  }
  if (any_masked && any_plain) throw Error("sentence mixes masked and unmasked constraints");
  result.mode = any_masked  ? AnnotationMode::kMask
                : any_plain ? AnnotationMode::kTada
                            : AnnotationMode::kPlain;
  return result;
}

std::size_t annotation_budget(std::size_t total, double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw Error("annotation rate must be within [0, 1]");
  // The epsilon absorbs binary representation error, e.g. 0.29 * 100.
  const double budget = std::floor(rate * static_cast<double>(total) + 1e-9);
  return std::min(total, static_cast<std::size_t>(budget));
}

std::vector<std::size_t> sample_for_annotation(std::size_t total, std::span<const std::size_t> grounded,
                                               double rate, std::uint64_t seed) {
  const std::size_t k = std::min(grounded.size(), annotation_budget(total, rate));
  std::vector<std::size_t> pool(grounded.begin(), grounded.end());
  Rng rng(derive_seed(seed, kSamplerStream));
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<ConstraintSpan> constrain_sentence(const SentencePair& pair, const Matcher& matcher,
                                               const ResolutionPolicy& policy,
                                               const AnnotationScheme& scheme) {
  try {
    check_no_reserved(pair.source, scheme);
    const auto matches = matcher.find_spans(pair.source);
    if (matches.empty()) return {};
    const Tokens* reference = pair.target ? &*pair.target : nullptr;
    if (policy.kind == ResolutionKind::kTrainReferenceMatch && !reference)
      throw Error("no reference translation");
    auto constraints = resolve_targets(pair.source, matches, reference, matcher, policy, pair.id);
    for (const auto& c : constraints) check_no_reserved(c.chosen_target, scheme);
    return constraints;
  } catch (const Error& e) {
    throw Error("sentence " + std::to_string(pair.id) + ": " + e.what());
  }
}

AnnotatedRecord make_record(SentencePair pair, std::vector<ConstraintSpan> constraints, bool annotate,
                            AnnotationMode mode, const AnnotationScheme& scheme) {
  AnnotatedRecord record;
  record.pair = std::move(pair);
  if (!annotate || constraints.empty() || mode == AnnotationMode::kPlain) {
    record.mode = AnnotationMode::kPlain;
    record.annotated_source = record.pair.source;
    return record;
  }
  record.mode = mode;
  record.constraints = std::move(constraints);
  record.annotated_source = render(mode, record.pair.source, record.constraints, scheme);
  return record;
}

std::vector<AnnotatedRecord> annotate_corpus(std::span<const SentencePair> pairs, const Matcher& matcher,
                                             const AnnotateOptions& options) {
  if (options.mode == AnnotationMode::kPlain) throw Error("annotation mode must be tada or mask");
  const std::size_t n = pairs.size();
  const ResolutionPolicy policy{options.policy, options.seed};

  std::vector<std::vector<ConstraintSpan>> constraints(n);
  parallel_for_chunks(n, options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      constraints[i] = constrain_sentence(pairs[i], matcher, policy, options.scheme);
  });

  std::vector<std::size_t> grounded;
  for (std::size_t i = 0; i < n; ++i)
    if (!constraints[i].empty()) grounded.push_back(i);
  const auto selected = sample_for_annotation(n, grounded, options.rate, options.seed);
  std::vector<char> annotate(n, 0);
  for (auto i : selected) annotate[i] = 1;

  std::vector<AnnotatedRecord> records(n);
  parallel_for_chunks(n, options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      records[i] = make_record(pairs[i], std::move(constraints[i]), annotate[i], options.mode, options.scheme);
  });
  return records;
}

}  // namespace termtag
