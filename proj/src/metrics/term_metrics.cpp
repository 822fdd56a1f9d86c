#include <algorithm>
#include <map>

#include "termtag/error.hpp"
#include "termtag/metrics.hpp"

namespace termtag {
namespace {

Tokens normalized(std::span<const std::string> tokens, CasingPolicy casing) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(normalize_token(t, casing));
  return out;
}

std::vector<std::size_t> occurrences_normalized(std::span<const std::string> tokens,
                                                std::span<const std::string> term) {
  std::vector<std::size_t> starts;
  if (term.empty() || term.size() > tokens.size()) return starts;
  for (std::size_t i = 0; i + term.size() <= tokens.size();) {
    if (std::equal(term.begin(), term.end(), tokens.begin() + i)) {
      starts.push_back(i);
      i += term.size();
    } else {
      ++i;
    }
  }
  return starts;
}

Tokens window_around(std::span<const std::string> tokens, std::size_t start, std::size_t end, std::size_t n) {
  Tokens window;
  const std::size_t left = start >= n ? start - n : 0;
  window.insert(window.end(), tokens.begin() + left, tokens.begin() + start);
  const std::size_t right = std::min(tokens.size(), end + n);
  window.insert(window.end(), tokens.begin() + end, tokens.begin() + right);
  return window;
}

std::size_t multiset_intersection(Tokens a, Tokens b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t count = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] == b[j]) {
      ++count;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

}  // namespace

std::vector<std::size_t> find_occurrences(std::span<const std::string> tokens,
                                          std::span<const std::string> term, CasingPolicy casing) {
  if (casing == CasingPolicy::kExact) return occurrences_normalized(tokens, term);
  return occurrences_normalized(normalized(tokens, casing), normalized(term, casing));
}

ExactMatchCounts exact_match_counts(std::span<const std::string> hypothesis, std::span<const Tokens> targets,
                                    CasingPolicy casing) {
  ExactMatchCounts counts;
  counts.instances = targets.size();
  if (targets.empty()) return counts;
  const Tokens hyp = normalized(hypothesis, casing);
  // Instances grouped by (normalized) term, keeping first-seen order.
  std::map<Tokens, std::size_t> required;
  for (const auto& t : targets) ++required[normalized(t, casing)];
  for (const auto& [term, needed] : required)
    counts.matched += std::min(needed, occurrences_normalized(hyp, term).size());
  return counts;
}

double exact_match_accuracy(std::span<const Tokens> hypotheses, std::span<const SentenceTargets> targets,
                            CasingPolicy casing) {
  if (hypotheses.size() != targets.size())
    throw Error("line count mismatch " + std::to_string(hypotheses.size()) + " vs " +
                std::to_string(targets.size()));
  ExactMatchCounts total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const auto c = exact_match_counts(hypotheses[i], targets[i], casing);
    total.instances += c.instances;
    total.matched += c.matched;
  }
  if (total.instances == 0) throw Error("no constraints to score");
  return static_cast<double>(total.matched) / static_cast<double>(total.instances);
}

std::vector<double> window_overlap_instances(std::span<const std::string> hypothesis,
                                             std::span<const std::string> reference,
                                             std::span<const Tokens> targets, std::size_t n,
                                             CasingPolicy casing, std::size_t* skipped) {
  if (n < 1) throw Error("window size must be at least 1");
  std::vector<double> scores;
  if (targets.empty()) return scores;
  const Tokens hyp = normalized(hypothesis, casing);
  const Tokens ref = normalized(reference, casing);
  std::map<Tokens, std::size_t> seen;
  for (const auto& target : targets) {
    const Tokens term = normalized(target, casing);
    const std::size_t k = seen[term]++;
    const auto ref_occ = occurrences_normalized(ref, term);
    if (k >= ref_occ.size()) {
      if (skipped) ++*skipped;
      continue;
    }
    const auto hyp_occ = occurrences_normalized(hyp, term);
    if (k >= hyp_occ.size()) {
      scores.push_back(0.0);
      continue;
    }
    Tokens ref_window = window_around(ref, ref_occ[k], ref_occ[k] + term.size(), n);
    Tokens hyp_window = window_around(hyp, hyp_occ[k], hyp_occ[k] + term.size(), n);
    const std::size_t attainable = std::min(ref_window.size(), hyp_window.size());
    if (attainable == 0) {
      scores.push_back(1.0);
      continue;
    }
    const std::size_t shared = multiset_intersection(std::move(ref_window), std::move(hyp_window));
    scores.push_back(static_cast<double>(shared) / static_cast<double>(attainable));
  }
  return scores;
}

WindowOverlapResult window_overlap(std::span<const Tokens> hypotheses, std::span<const Tokens> references,
                                   std::span<const SentenceTargets> targets, std::size_t n,
                                   CasingPolicy casing) {
  if (n < 1) throw Error("window size must be at least 1");
  if (hypotheses.size() != references.size() || hypotheses.size() != targets.size())
    throw Error("hypotheses, references and constraints must have the same number of lines");
  WindowOverlapResult result;
  double sum = 0.0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    for (double s : window_overlap_instances(hypotheses[i], references[i], targets[i], n, casing,
                                             &result.skipped)) {
      sum += s;
      ++result.scored;
    }
  }
  result.score = result.scored ? sum / static_cast<double>(result.scored) : 0.0;
  return result;
}

std::vector<TokenSpan> reference_term_spans(std::span<const std::string> reference,
                                            std::span<const Tokens> targets, CasingPolicy casing) {
  std::vector<TokenSpan> spans;
  const Tokens ref = normalized(reference, casing);
  std::map<Tokens, std::size_t> seen;
  for (const auto& target : targets) {
    const Tokens term = normalized(target, casing);
    const std::size_t k = seen[term]++;
    const auto occ = occurrences_normalized(ref, term);
    if (k < occ.size()) spans.push_back(TokenSpan{occ[k], occ[k] + term.size()});
  }
  return spans;
}

}  // namespace termtag
