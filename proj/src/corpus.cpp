#include "termtag/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "termtag/augment.hpp"
#include "termtag/error.hpp"
#include "termtag/unicode.hpp"

namespace termtag {
namespace {

std::string term_key(const Tokens& tokens) { return join(tokens, "\x1f"); }

std::string line_error(std::size_t line, std::string_view what) {
  return "line " + std::to_string(line) + ": " + std::string(what);
}

// NFC-normalizes one input line, reporting the line number on bad UTF-8.
std::string normalized_line(const std::string& line, std::size_t line_no) {
  try {
    return unicode::nfc(line);
  } catch (const Error& e) {
    throw Error(line_error(line_no, e.what()));
  }
}

}  // namespace

std::string_view to_string(AnnotationMode mode) {
  switch (mode) {
    case AnnotationMode::kPlain: return "plain";
    case AnnotationMode::kTada: return "tada";
    case AnnotationMode::kMask: return "mask";
  }
  return "?";
}

AnnotationMode parse_annotation_mode(std::string_view text) {
  if (text == "plain") return AnnotationMode::kPlain;
  if (text == "tada") return AnnotationMode::kTada;
  if (text == "mask") return AnnotationMode::kMask;
  throw Error("unknown annotation mode '" + std::string(text) + "'");
}

bool Terminology::add(const Tokens& source, const Tokens& target) {
  if (source.empty() || target.empty()) throw Error("terminology terms must be non-empty");
  auto [it, inserted] = index_.try_emplace(term_key(source), entries_.size());
  if (inserted) {
    entries_.push_back(TermEntry{source, {target}});
    return true;
  }
  auto& variants = entries_[it->second].target_variants;
  if (std::find(variants.begin(), variants.end(), target) != variants.end()) return false;
  variants.push_back(target);
  return true;
}

std::size_t Terminology::unique_pair_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.target_variants.size();
  return n;
}

const TermEntry* Terminology::find(const Tokens& source) const {
  auto it = index_.find(term_key(source));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Terminology load_terminology(std::istream& in, const TokenizerScheme& scheme) {
  Terminology terminology;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }))
      continue;
    const std::string text = normalized_line(line, line_no);
    const auto tab = text.find('\t');
    if (tab == std::string::npos) throw Error(line_error(line_no, "missing tab separator"));
    if (text.find('\t', tab + 1) != std::string::npos)
      throw Error(line_error(line_no, "more than one tab separator"));
    Tokens source = tokenize(std::string_view(text).substr(0, tab), scheme);
    Tokens target = tokenize(std::string_view(text).substr(tab + 1), scheme);
    if (source.empty()) throw Error(line_error(line_no, "empty source term"));
    if (target.empty()) throw Error(line_error(line_no, "empty target term"));
    terminology.add(source, target);
  }
  if (in.bad()) throw Error("read error while loading terminology");
  if (terminology.empty()) throw Error("empty terminology");
  return terminology;
}

void write_terminology(const Terminology& terminology, std::ostream& out) {
  for (const auto& entry : terminology.entries()) {
    const std::string source = join(entry.source_term);
    for (const auto& variant : entry.target_variants) out << source << '\t' << join(variant) << '\n';
  }
  if (!out) throw Error("write failed");
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(normalized_line(line, lines.size() + 1));
  if (in.bad()) throw Error("read error");
  return lines;
}

std::vector<SentencePair> load_monolingual(std::istream& source, const TokenizerScheme& scheme) {
  std::vector<SentencePair> pairs;
  std::string line;
  while (std::getline(source, line)) {
    const std::size_t line_no = pairs.size() + 1;
    SentencePair pair;
    pair.id = pairs.size();
    pair.source = tokenize(normalized_line(line, line_no), scheme);
    if (pair.source.empty()) throw Error(line_error(line_no, "blank source line"));
    pairs.push_back(std::move(pair));
  }
  if (source.bad()) throw Error("read error");
  return pairs;
}

std::vector<SentencePair> load_parallel(std::istream& source, std::istream& target,
                                        const TokenizerScheme& scheme) {
  std::vector<SentencePair> pairs = load_monolingual(source, scheme);
  std::vector<std::string> targets = read_lines(target);
  if (targets.size() != pairs.size())
    throw Error("line count mismatch " + std::to_string(pairs.size()) + " vs " +
                std::to_string(targets.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].target = tokenize(targets[i], scheme);
  return pairs;
}

std::string sidecar_line(const AnnotatedRecord& record) {
  nlohmann::json constraints = nlohmann::json::array();
  for (const auto& c : record.constraints) {
    constraints.push_back({{"start", c.start},
                           {"end", c.end},
                           {"source_term", join(c.source_term)},
                           {"chosen_target", join(c.chosen_target)}});
  }
  nlohmann::json j = {{"id", record.pair.id},
                      {"mode", std::string(to_string(record.mode))},
                      {"constraints", std::move(constraints)}};
  return j.dump();
}

void write_record(const AnnotatedRecord& record, std::ostream& text, std::ostream* sidecar) {
  const auto& tokens = record.mode == AnnotationMode::kPlain ? record.pair.source : record.annotated_source;
  text << join(tokens) << '\n';
  if (sidecar) *sidecar << sidecar_line(record) << '\n';
}

void write_records(std::span<const AnnotatedRecord> records, std::ostream& text,
                   std::ostream* sidecar) {
  for (const auto& r : records) write_record(r, text, sidecar);
  text.flush();
  if (sidecar) sidecar->flush();
  if (!text || (sidecar && !*sidecar)) throw Error("write failed");
}

std::vector<SidecarEntry> read_sidecar(std::istream& sidecar) {
  std::vector<SidecarEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(sidecar, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      SidecarEntry entry;
      entry.id = j.at("id").get<std::size_t>();
      entry.mode = parse_annotation_mode(j.at("mode").get<std::string>());
      for (const auto& c : j.at("constraints")) {
        ConstraintSpan span;
        span.start = c.at("start").get<std::size_t>();
        span.end = c.at("end").get<std::size_t>();
        span.source_term = split_on_space(c.at("source_term").get<std::string>());
        span.chosen_target = split_on_space(c.at("chosen_target").get<std::string>());
        if (span.end <= span.start || span.source_term.size() != span.length())
          throw Error("constraint span does not match its source term");
        if (span.chosen_target.empty()) throw Error("empty chosen_target");
        entry.constraints.push_back(std::move(span));
      }
      entries.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw Error("sidecar " + line_error(line_no, e.what()));
    } catch (const Error& e) {
      throw Error("sidecar " + line_error(line_no, e.what()));
    }
  }
  if (sidecar.bad()) throw Error("read error");
  return entries;
}

std::vector<AnnotatedRecord> read_records(std::istream& text, std::istream& sidecar,
                                          std::istream* target) {
  const std::vector<std::string> lines = read_lines(text);
  std::vector<SidecarEntry> entries = read_sidecar(sidecar);
  if (lines.size() != entries.size())
    throw Error("line count mismatch " + std::to_string(lines.size()) + " vs " +
                std::to_string(entries.size()));
  std::vector<std::string> targets;
  if (target) {
    targets = read_lines(*target);
    if (targets.size() != lines.size())
      throw Error("line count mismatch " + std::to_string(lines.size()) + " vs " +
                  std::to_string(targets.size()));
  }

  std::vector<AnnotatedRecord> records;
  records.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto& entry = entries[i];
    AnnotatedRecord record;
    record.mode = entry.mode;
    record.pair.id = entry.id;
    record.constraints = std::move(entry.constraints);
    Tokens annotated = split_on_space(lines[i]);

    StrippedSentence stripped;
    try {
      stripped = strip_annotation(annotated);
    } catch (const Error& e) {
      throw Error(line_error(line_no, e.what()));
    }
    if (stripped.mode != record.mode)
      throw Error(line_error(line_no, "sidecar mode does not match the annotated text"));

    if (record.mode == AnnotationMode::kPlain) {
      record.pair.source = annotated;
      record.annotated_source = std::move(annotated);
    } else {
      if (stripped.constraints.size() != record.constraints.size())
        throw Error(line_error(line_no, "sidecar constraints do not match the annotated text"));
      Tokens source = std::move(stripped.tokens);
      for (std::size_t k = 0; k < record.constraints.size(); ++k) {
        const auto& c = record.constraints[k];
        const auto& rc = stripped.constraints[k];
        if (rc.start != c.start || rc.end != c.end || rc.target != c.chosen_target ||
            c.end > source.size())
          throw Error(line_error(line_no, "sidecar constraints do not match the annotated text"));
        if (record.mode == AnnotationMode::kMask)
          std::copy(c.source_term.begin(), c.source_term.end(), source.begin() + c.start);
        else if (rc.source_side != c.source_term)
          throw Error(line_error(line_no, "sidecar source term does not match the annotated text"));
      }
      record.pair.source = std::move(source);
      record.annotated_source = std::move(annotated);
    }
    if (target) record.pair.target = split_on_space(targets[i]);
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace termtag
