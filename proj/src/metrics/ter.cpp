#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "termtag/error.hpp"
#include "termtag/metrics.hpp"

namespace termtag {
namespace {

constexpr double kEps = 1e-9;

struct AlignedEdit {
  EditKind kind;
  std::size_t hyp;  // hypothesis index (match/substitute/delete)
  std::size_t ref;  // reference index (match/substitute/insert)
};

struct Alignment {
  double cost = 0.0;
  std::vector<AlignedEdit> edits;
};

// Weighted Levenshtein distance rewriting `hyp` into `ref`. Touching
// reference token j costs weights[j]; dropping a hypothesis token costs 1.
Alignment align(std::span<const std::string> hyp, std::span<const std::string> ref,
                std::span<const double> weights, bool with_trace) {
  const std::size_t H = hyp.size(), R = ref.size();
  std::vector<double> d((H + 1) * (R + 1));
  auto at = [&](std::size_t i, std::size_t j) -> double& { return d[i * (R + 1) + j]; };
  at(0, 0) = 0.0;
  for (std::size_t j = 1; j <= R; ++j) at(0, j) = at(0, j - 1) + weights[j - 1];
  for (std::size_t i = 1; i <= H; ++i) {
    at(i, 0) = static_cast<double>(i);
    for (std::size_t j = 1; j <= R; ++j) {
      const double diag = at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0.0 : weights[j - 1]);
      const double del = at(i - 1, j) + 1.0;
      const double ins = at(i, j - 1) + weights[j - 1];
      at(i, j) = std::min({diag, del, ins});
    }
  }
  Alignment result;
  result.cost = at(H, R);
  if (!with_trace) return result;

  std::size_t i = H, j = R;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = hyp[i - 1] == ref[j - 1];
      const double diag = at(i - 1, j - 1) + (same ? 0.0 : weights[j - 1]);
      if (std::abs(diag - at(i, j)) < kEps) {
        result.edits.push_back({same ? EditKind::kMatch : EditKind::kSubstitute, i - 1, j - 1});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && std::abs(at(i - 1, j) + 1.0 - at(i, j)) < kEps) {
      result.edits.push_back({EditKind::kDelete, i - 1, 0});
      --i;
      continue;
    }
    result.edits.push_back({EditKind::kInsert, 0, j - 1});
    --j;
  }
  std::reverse(result.edits.begin(), result.edits.end());
  return result;
}

Tokens perform_shift(std::span<const std::string> words, std::size_t start, std::size_t length,
                     std::size_t target) {
  Tokens out;
  out.reserve(words.size());
  auto append = [&](std::size_t b, std::size_t e) { out.insert(out.end(), words.begin() + b, words.begin() + e); };
  if (target < start) {
    append(0, target);
    append(start, start + length);
    append(target, start);
    append(start + length, words.size());
  } else {
    append(0, start);
    append(start + length, target);
    append(start, start + length);
    append(target, words.size());
  }
  return out;
}

struct Shift {
  double gain = 0.0;
  double cost = 0.0;
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t target = 0;
  // Destination as proposed by the alignment, before in-block adjustment.
  std::size_t proposed = 0;
  Tokens shifted;
};

// True if a ranks before b: larger gain, then longer block, then leftmost
// block, then earliest destination.
bool ranks_before(const Shift& a, const Shift& b) {
  if (std::abs(a.gain - b.gain) > kEps) return a.gain > b.gain;
  if (a.length != b.length) return a.length > b.length;
  if (a.start != b.start) return a.start < b.start;
  return a.proposed < b.proposed;
}

std::optional<Shift> best_shift(std::span<const std::string> hyp, std::span<const std::string> ref,
                                std::span<const double> weights, const TerOptions& options) {
  const Alignment current = align(hyp, ref, weights, true);
  const std::size_t H = hyp.size(), R = ref.size();

  std::vector<char> hyp_err(H, 0), ref_err(R, 0);
  // align_to[j]: hypothesis index aligned with reference j, or the index of
  // the last hypothesis token before it when j is an insertion (-1 if none).
  std::vector<std::ptrdiff_t> align_to(R, -1);
  std::ptrdiff_t last_hyp = -1;
  for (const auto& e : current.edits) {
    switch (e.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
        last_hyp = static_cast<std::ptrdiff_t>(e.hyp);
        align_to[e.ref] = last_hyp;
        if (e.kind == EditKind::kSubstitute) hyp_err[e.hyp] = ref_err[e.ref] = 1;
        break;
      case EditKind::kDelete:
        last_hyp = static_cast<std::ptrdiff_t>(e.hyp);
        hyp_err[e.hyp] = 1;
        break;
      case EditKind::kInsert:
        align_to[e.ref] = last_hyp;
        ref_err[e.ref] = 1;
        break;
      case EditKind::kShift:
        break;
    }
  }

  std::optional<Shift> best;
  for (std::size_t sh = 0; sh < H; ++sh) {
    for (std::size_t sr = 0; sr < R; ++sr) {
      const std::size_t distance = sh > sr ? sh - sr : sr - sh;
      if (distance > options.max_shift_distance) continue;
      for (std::size_t length = 1; length <= options.max_shift_size && sh + length <= H && sr + length <= R;
           ++length) {
        if (hyp[sh + length - 1] != ref[sr + length - 1]) break;
        if (!std::any_of(hyp_err.begin() + sh, hyp_err.begin() + sh + length, [](char c) { return c; })) continue;
        if (!std::any_of(ref_err.begin() + sr, ref_err.begin() + sr + length, [](char c) { return c; })) continue;
        const std::ptrdiff_t aligned = align_to[sr];
        if (aligned >= static_cast<std::ptrdiff_t>(sh) && aligned < static_cast<std::ptrdiff_t>(sh + length))
          continue;

        double shift_cost = 1.0;
        for (std::size_t j = sr; j < sr + length; ++j) shift_cost = std::max(shift_cost, weights[j]);

        std::ptrdiff_t previous = -1;
        for (std::ptrdiff_t offset = -1; offset < static_cast<std::ptrdiff_t>(length); ++offset) {
          const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(sr) + offset;
          const std::ptrdiff_t idx = r < 0 ? 0 : align_to[static_cast<std::size_t>(r)] + 1;
          if (idx == previous) continue;
          previous = idx;
          // A destination inside the block (or at either edge) moves the
          // block right by idx - sh positions.
          auto target = static_cast<std::size_t>(idx);
          if (target >= sh && target <= sh + length) target = std::min(target + length, H);
          if (target == sh + length) continue;
          Shift candidate;
          candidate.start = sh;
          candidate.length = length;
          candidate.target = target;
          candidate.proposed = static_cast<std::size_t>(idx);
          candidate.cost = shift_cost;
          candidate.shifted = perform_shift(hyp, sh, length, target);
          candidate.gain = current.cost - align(candidate.shifted, ref, weights, false).cost;
          if (candidate.gain < kEps || candidate.gain + kEps < candidate.cost) continue;
          if (!best || ranks_before(candidate, *best)) best = std::move(candidate);
        }
      }
    }
  }
  return best;
}

}  // namespace

double TerResult::score() const {
  if (ref_length <= 0.0) throw Error("empty reference");
  return edits / ref_length;
}

double clamp_unit(double value) { return std::clamp(value, 0.0, 1.0); }

TerResult weighted_ter(std::span<const std::string> hypothesis, std::span<const std::string> reference,
                       std::span<const TokenSpan> term_spans, double term_weight, const TerOptions& options) {
  if (reference.empty()) throw Error("empty reference");
  if (!(term_weight >= 1.0)) throw Error("term weight must be at least 1");
  std::vector<double> weights(reference.size(), 1.0);
  for (const auto& span : term_spans) {
    if (span.start >= span.end || span.end > reference.size()) throw Error("term span outside the reference");
    for (std::size_t j = span.start; j < span.end; ++j) weights[j] = term_weight;
  }

  TerResult result;
  for (double w : weights) result.ref_length += w;

  Tokens current(hypothesis.begin(), hypothesis.end());
  if (options.shifts) {
    while (auto shift = best_shift(current, reference, weights, options)) {
      result.script.operations.push_back(
          EditOp{EditKind::kShift, shift->start, shift->length, shift->target, {}, shift->cost});
      result.edits += shift->cost;
      ++result.shift_count;
      current = std::move(shift->shifted);
    }
  }

  const Alignment final_alignment = align(current, reference, weights, true);
  for (const auto& e : final_alignment.edits) {
    EditOp op;
    op.kind = e.kind;
    switch (e.kind) {
      case EditKind::kMatch: op.token = reference[e.ref]; break;
      case EditKind::kSubstitute: op.token = reference[e.ref]; op.cost = weights[e.ref]; break;
      case EditKind::kInsert: op.token = reference[e.ref]; op.cost = weights[e.ref]; break;
      case EditKind::kDelete: op.cost = 1.0; break;
      case EditKind::kShift: break;
    }
    result.script.operations.push_back(std::move(op));
  }
  result.edits += final_alignment.cost;
  result.script.cost = result.edits;
  return result;
}

double ter(std::span<const std::string> hypothesis, std::span<const std::string> reference,
           const TerOptions& options) {
  return weighted_ter(hypothesis, reference, {}, 1.0, options).score();
}

double term_ter(std::span<const std::string> hypothesis, std::span<const std::string> reference,
                std::span<const TokenSpan> term_spans, double term_weight, const TerOptions& options) {
  return weighted_ter(hypothesis, reference, term_spans, term_weight, options).score();
}

Tokens apply_edit_script(std::span<const std::string> hypothesis, const EditScript& script) {
  Tokens current(hypothesis.begin(), hypothesis.end());
  Tokens output;
  std::size_t pos = 0;
  bool aligning = false;
  for (const auto& op : script.operations) {
    if (op.kind == EditKind::kShift) {
      if (aligning) throw Error("shift after alignment operations");
      if (op.from + op.length > current.size() || op.to > current.size() ||
          (op.to >= op.from && op.to <= op.from + op.length))
        throw Error("invalid shift");
      current = perform_shift(current, op.from, op.length, op.to);
      continue;
    }
    aligning = true;
    switch (op.kind) {
      case EditKind::kMatch:
        if (pos >= current.size() || current[pos] != op.token) throw Error("match does not hold");
        output.push_back(current[pos++]);
        break;
      case EditKind::kSubstitute:
        if (pos >= current.size()) throw Error("substitution past end");
        output.push_back(op.token);
        ++pos;
        break;
      case EditKind::kInsert:
        output.push_back(op.token);
        break;
      case EditKind::kDelete:
        if (pos >= current.size()) throw Error("deletion past end");
        ++pos;
        break;
      case EditKind::kShift:
        break;
    }
  }
  if (pos != current.size()) throw Error("edit script leaves hypothesis tokens unconsumed");
  return output;
}

}  // namespace termtag
