#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "termtag/match.hpp"
#include "termtag/tokenize.hpp"
#include "termtag/types.hpp"

namespace termtag {

// Target terms expected in one sentence's translation, one per constraint
// instance.
using SentenceTargets = std::vector<Tokens>;

// Start positions of non-overlapping occurrences of `term`, scanned left to
// right.
std::vector<std::size_t> find_occurrences(std::span<const std::string> tokens,
                                          std::span<const std::string> term, CasingPolicy casing);

// ---------------------------------------------------------------------------
// Exact-match accuracy

struct ExactMatchCounts {
  std::size_t instances = 0;
  std::size_t matched = 0;
};

// Instances of one term consume distinct occurrences, so a term required
// twice must appear twice.
ExactMatchCounts exact_match_counts(std::span<const std::string> hypothesis,
                                    std::span<const Tokens> targets, CasingPolicy casing);

double exact_match_accuracy(std::span<const Tokens> hypotheses,
                            std::span<const SentenceTargets> targets,
                            CasingPolicy casing = CasingPolicy::kExact);

// ---------------------------------------------------------------------------
// Window overlap
//
// For the k-th instance of a term, the k-th occurrence is located in the
// reference and in the hypothesis. The n tokens on each side form a window;
// the score is |hyp window ∩ ref window| (multiset) divided by the smaller
// window size. Instances missing from the hypothesis score 0; instances
// missing from the reference are skipped.

struct WindowOverlapResult {
  double score = 0.0;
  std::size_t scored = 0;
  std::size_t skipped = 0;
};

std::vector<double> window_overlap_instances(std::span<const std::string> hypothesis,
                                             std::span<const std::string> reference,
                                             std::span<const Tokens> targets, std::size_t n,
                                             CasingPolicy casing, std::size_t* skipped = nullptr);

WindowOverlapResult window_overlap(std::span<const Tokens> hypotheses,
                                   std::span<const Tokens> references,
                                   std::span<const SentenceTargets> targets, std::size_t n,
                                   CasingPolicy casing = CasingPolicy::kExact);

// ---------------------------------------------------------------------------
// Translation edit rate

enum class EditKind { kMatch, kSubstitute, kInsert, kDelete, kShift };

// Operations rewrite the hypothesis into the reference. Shifts come first,
// in the order they were applied, followed by one alignment pass over the
// shifted hypothesis.
//   kShift:      move hypothesis block [from, from + length) so that it starts
//                before the token currently at index `to` (indices of the
//                hypothesis before this shift)
//   kMatch:      keep `token`
//   kSubstitute: replace a hypothesis token by `token`
//   kInsert:     insert reference token `token`
//   kDelete:     drop a hypothesis token
struct EditOp {
  EditKind kind = EditKind::kMatch;
  std::size_t from = 0;
  std::size_t length = 0;
  std::size_t to = 0;
  std::string token;
  double cost = 0.0;
};

struct EditScript {
  std::vector<EditOp> operations;
  double cost = 0.0;
};

Tokens apply_edit_script(std::span<const std::string> hypothesis, const EditScript& script);

struct TerOptions {
  bool shifts = true;
  std::size_t max_shift_size = 10;
  std::size_t max_shift_distance = 50;
};

struct TerResult {
  double edits = 0.0;       // weighted edit cost including shifts
  double ref_length = 0.0;  // weighted reference length
  std::size_t shift_count = 0;
  EditScript script;

  double score() const;
};

// Half-open token range of a term occurrence in the reference.
struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

// Edits touching a reference token inside `term_spans` cost `term_weight`;
// the normalizer weights reference tokens the same way. With no spans (or
// weight 1) this is plain TER.
TerResult weighted_ter(std::span<const std::string> hypothesis,
                       std::span<const std::string> reference, std::span<const TokenSpan> term_spans,
                       double term_weight, const TerOptions& options = {});

double ter(std::span<const std::string> hypothesis, std::span<const std::string> reference,
           const TerOptions& options = {});

// Terminology-biased TER of one sentence.
double term_ter(std::span<const std::string> hypothesis, std::span<const std::string> reference,
                std::span<const TokenSpan> term_spans, double term_weight = 2.0,
                const TerOptions& options = {});

double clamp_unit(double value);

// ---------------------------------------------------------------------------
// BLEU

struct BleuStats {
  std::size_t matches[4] = {0, 0, 0, 0};
  std::size_t totals[4] = {0, 0, 0, 0};
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  void add(const BleuStats& other);
  double score() const;
};

BleuStats bleu_stats(std::span<const std::string> hypothesis, std::span<const std::string> reference);

// Corpus BLEU-4, brevity penalty, add-one smoothing for zero precisions of
// order 2 to 4.
double bleu(std::span<const Tokens> hypotheses, std::span<const Tokens> references);

// ---------------------------------------------------------------------------
// Report

struct EvalOptions {
  std::vector<std::size_t> windows = {2, 3};
  double term_weight = 2.0;
  CasingPolicy casing = CasingPolicy::kExact;
  TokenizerScheme scheme;
  TerOptions ter;
};

struct EvalReport {
  double bleu = 0.0;
  double exact_match = 0.0;
  // Window size -> score; {2, 3} by default.
  std::map<std::size_t, double> window_overlap;
  double one_minus_term = 0.0;
  std::size_t sentences = 0;
  std::size_t constraint_instances = 0;
  std::size_t matched_instances = 0;
  std::size_t window_scored = 0;
  std::size_t window_skipped = 0;
};

// Reference term spans used by TERm: the k-th occurrence of each target.
std::vector<TokenSpan> reference_term_spans(std::span<const std::string> reference,
                                            std::span<const Tokens> targets, CasingPolicy casing);

EvalReport evaluate(std::span<const Tokens> hypotheses, std::span<const Tokens> references,
                    std::span<const SentenceTargets> targets, const EvalOptions& options = {});

// Reads hypothesis / reference text and a records sidecar; the targets are
// the chosen_target of every sidecar constraint.
EvalReport evaluate_files(std::istream& hypotheses, std::istream& references,
                          std::istream& sidecar, const EvalOptions& options = {});

// Column names follow the usual results table; BLEU is printed x100.
std::string render_report_table(const EvalReport& report);
nlohmann::json report_to_json(const EvalReport& report);

}  // namespace termtag
