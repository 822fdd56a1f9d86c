#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "termtag/tokenize.hpp"
#include "termtag/types.hpp"

namespace termtag {

// Two-column TSV, one (source, target) pair per line. Each side is
// NFC-normalized, trimmed and tokenized with `scheme`.
Terminology load_terminology(std::istream& in, const TokenizerScheme& scheme = {});
// One line per unique pair, in entry/variant order.
void write_terminology(const Terminology& terminology, std::ostream& out);

// Line-aligned corpora. A trailing newline does not produce an empty pair.
std::vector<SentencePair> load_parallel(std::istream& source, std::istream& target,
                                        const TokenizerScheme& scheme = {});
std::vector<SentencePair> load_monolingual(std::istream& source,
                                           const TokenizerScheme& scheme = {});

// Reads all lines, NFC-normalized. Used for hypothesis/reference files.
std::vector<std::string> read_lines(std::istream& in);

// Writes the annotated source text (one sentence per line) and, when given,
// the JSON-lines sidecar with id, mode and constraints.
void write_records(std::span<const AnnotatedRecord> records, std::ostream& text,
                   std::ostream* sidecar);
void write_record(const AnnotatedRecord& record, std::ostream& text, std::ostream* sidecar);

std::string sidecar_line(const AnnotatedRecord& record);

// Inverse of write_records. Source sentences are recovered from the annotated
// text, with masked positions restored from the sidecar. Targets are only
// present when a target stream is supplied.
std::vector<AnnotatedRecord> read_records(std::istream& text, std::istream& sidecar,
                                          std::istream* target = nullptr);

// Constraint metadata only, one entry per sidecar line.
struct SidecarEntry {
  std::size_t id = 0;
  AnnotationMode mode = AnnotationMode::kPlain;
  std::vector<ConstraintSpan> constraints;
};
std::vector<SidecarEntry> read_sidecar(std::istream& sidecar);

}  // namespace termtag
