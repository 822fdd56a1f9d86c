#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "termtag/error.hpp"
#include "termtag/metrics.hpp"

namespace termtag {
namespace {

constexpr std::size_t kMaxOrder = 4;

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(std::span<const std::string> tokens, std::size_t order) {
  NgramCounts counts;
  if (tokens.size() < order) return counts;
  std::string key;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    key.clear();
    for (std::size_t k = 0; k < order; ++k) {
      if (k) key.push_back('\x1f');
      key.append(tokens[i + k]);
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

void BleuStats::add(const BleuStats& other) {
  for (std::size_t n = 0; n < kMaxOrder; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
}

double BleuStats::score() const {
  if (hyp_length == 0 || matches[0] == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < kMaxOrder; ++n) {
    double precision;
    if (n > 0 && matches[n] == 0) {
      precision = 1.0 / static_cast<double>(totals[n] + 1);
    } else {
      precision = static_cast<double>(matches[n]) / static_cast<double>(totals[n]);
    }
    log_sum += std::log(precision);
  }
  const double ratio = static_cast<double>(ref_length) / static_cast<double>(hyp_length);
  const double brevity = std::exp(std::min(0.0, 1.0 - ratio));
  return std::clamp(brevity * std::exp(log_sum / kMaxOrder), 0.0, 1.0);
}

BleuStats bleu_stats(std::span<const std::string> hypothesis, std::span<const std::string> reference) {
  BleuStats stats;
  stats.hyp_length = hypothesis.size();
  stats.ref_length = reference.size();
  for (std::size_t order = 1; order <= kMaxOrder; ++order) {
    const auto hyp = count_ngrams(hypothesis, order);
    const auto ref = count_ngrams(reference, order);
    std::size_t matched = 0;
    for (const auto& [gram, count] : hyp) {
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    stats.matches[order - 1] = matched;
    stats.totals[order - 1] = hypothesis.size() >= order ? hypothesis.size() - order + 1 : 0;
  }
  return stats;
}

double bleu(std::span<const Tokens> hypotheses, std::span<const Tokens> references) {
  if (hypotheses.size() != references.size())
    throw Error("line count mismatch " + std::to_string(hypotheses.size()) + " vs " +
                std::to_string(references.size()));
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) total.add(bleu_stats(hypotheses[i], references[i]));
  return total.score();
}

}  // namespace termtag
