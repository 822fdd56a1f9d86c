#include <cstdio>
#include <istream>
#include <sstream>

#include "termtag/corpus.hpp"
#include "termtag/error.hpp"
#include "termtag/metrics.hpp"

namespace termtag {
namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace

EvalReport evaluate(std::span<const Tokens> hypotheses, std::span<const Tokens> references,
                    std::span<const SentenceTargets> targets, const EvalOptions& options) {
  if (hypotheses.size() != references.size())
    throw Error("line count mismatch " + std::to_string(hypotheses.size()) + " vs " +
                std::to_string(references.size()));
  if (targets.size() != hypotheses.size())
    throw Error("constraint records (" + std::to_string(targets.size()) + ") do not match the " +
                std::to_string(hypotheses.size()) + " hypotheses");

  EvalReport report;
  report.sentences = hypotheses.size();
  report.bleu = bleu(hypotheses, references);

  ExactMatchCounts exact;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const auto c = exact_match_counts(hypotheses[i], targets[i], options.casing);
    exact.instances += c.instances;
    exact.matched += c.matched;
  }
  if (exact.instances == 0) throw Error("no constraints to score");
  report.constraint_instances = exact.instances;
  report.matched_instances = exact.matched;
  report.exact_match = static_cast<double>(exact.matched) / static_cast<double>(exact.instances);

  for (std::size_t n : options.windows) {
    const auto w = window_overlap(hypotheses, references, targets, n, options.casing);
    report.window_overlap[n] = w.score;
    report.window_scored = w.scored;
    report.window_skipped = w.skipped;
  }

  double edits = 0.0, length = 0.0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    try {
      const auto spans = reference_term_spans(references[i], targets[i], options.casing);
      const auto r = weighted_ter(hypotheses[i], references[i], spans, options.term_weight, options.ter);
      edits += r.edits;
      length += r.ref_length;
    } catch (const Error& e) {
      throw Error("sentence " + std::to_string(i) + ": " + e.what());
    }
  }
  report.one_minus_term = length > 0.0 ? clamp_unit(1.0 - edits / length) : 0.0;
  return report;
}

EvalReport evaluate_files(std::istream& hypotheses, std::istream& references, std::istream& sidecar,
                          const EvalOptions& options) {
  std::vector<Tokens> hyps, refs;
  for (const auto& line : read_lines(hypotheses)) hyps.push_back(tokenize(line, options.scheme));
  for (const auto& line : read_lines(references)) refs.push_back(tokenize(line, options.scheme));
  std::vector<SentenceTargets> targets;
  for (auto& entry : read_sidecar(sidecar)) {
    SentenceTargets t;
    for (auto& c : entry.constraints) t.push_back(std::move(c.chosen_target));
    targets.push_back(std::move(t));
  }
  return evaluate(hyps, refs, targets, options);
}

std::string render_report_table(const EvalReport& report) {
  std::vector<std::pair<std::string, std::string>> columns;
  columns.emplace_back("BLEU", fixed(report.bleu * 100.0, 2));
  columns.emplace_back("Exact-Match Accuracy", fixed(report.exact_match, 3));
  for (const auto& [n, score] : report.window_overlap)
    columns.emplace_back("Window Overlap (" + std::to_string(n) + ")", fixed(score, 3));
  columns.emplace_back("1-TERm", fixed(report.one_minus_term, 3));

  std::ostringstream header, values;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& [name, value] = columns[i];
    const std::size_t width = std::max(name.size(), value.size());
    const std::string sep = i + 1 < columns.size() ? "  " : "";
    header << name << std::string(i + 1 < columns.size() ? width - name.size() : 0, ' ') << sep;
    values << value << std::string(i + 1 < columns.size() ? width - value.size() : 0, ' ') << sep;
  }
  return header.str() + "\n" + values.str() + "\n";
}

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["bleu"] = report.bleu;
  j["exact_match"] = report.exact_match;
  for (const auto& [n, score] : report.window_overlap) j["window_overlap_" + std::to_string(n)] = score;
  j["one_minus_term"] = report.one_minus_term;
  j["counts"] = {{"sentences", report.sentences},
                 {"constraint_instances", report.constraint_instances},
                 {"matched_instances", report.matched_instances},
                 {"window_scored", report.window_scored},
                 {"window_skipped", report.window_skipped}};
  return j;
}

}  // namespace termtag
