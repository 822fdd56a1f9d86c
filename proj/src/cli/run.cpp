#include "termtag/cli.hpp"

#include <iostream>
#include <optional>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "cli/io.hpp"
#include "termtag/augment.hpp"
#include "termtag/bpe.hpp"
#include "termtag/corpus.hpp"
#include "termtag/error.hpp"
#include "termtag/match.hpp"
#include "termtag/metrics.hpp"
#include "termtag/parallel.hpp"
#include "termtag/random.hpp"
#include "termtag/select.hpp"
#include "termtag/unicode.hpp"

namespace termtag::cli {
namespace {

constexpr std::size_t kBatchSize = 1 << 16;

// Every flag of every subcommand. Validated as a whole before any output
// file is opened.
struct RunConfig {
  std::string subcommand;

  std::string source, target, terminology, output, sidecar;
  std::string mode = "tada";
  std::string policy = "train";
  double rate = 0.1;
  std::uint64_t seed = kDefaultSeed;
  std::string casing = "insensitive";
  std::string tokenizer = "whitespace";
  bool lowercase = false;
  unsigned workers = default_worker_count();

  // select
  std::string output_target, stats_path, name;
  std::size_t upsample_factor = 1;

  // stats
  std::vector<std::string> corpora;
  std::string format = "text";

  // bpe
  std::string input = "-", codes;
  std::size_t merges = 40000;
  std::uint64_t min_frequency = 2;
  std::string end_of_word;
  std::vector<std::string> reserved = default_reserved_symbols();

  // evaluate
  std::string hypothesis, reference;
  double term_weight = 2.0;
  std::vector<std::size_t> window_sizes = {2, 3};
  std::string eval_casing = "exact";

  TokenizerScheme scheme() const { return {parse_tokenizer_kind(tokenizer), lowercase}; }

  void validate() const {
    (void)scheme();
    (void)parse_casing_policy(casing);
    (void)parse_casing_policy(eval_casing);
    if (workers == 0) throw Error("--workers must be at least 1");
    if (subcommand == "annotate") {
      const auto m = parse_annotation_mode(mode);
      if (m == AnnotationMode::kPlain) throw Error("--mode must be tada or mask");
      if (!(rate >= 0.0 && rate <= 1.0)) throw Error("--rate must be within [0, 1]");
      if (parse_resolution_kind(policy) == ResolutionKind::kTrainReferenceMatch && target.empty())
        throw Error("--policy train needs --target (reference translations)");
      if (!sidecar.empty() && sidecar == output) throw Error("--sidecar and --output must differ");
    }
    if (subcommand == "select") {
      if (upsample_factor == 0) throw Error("--upsample must be at least 1");
      if (!target.empty() && output_target.empty()) throw Error("--target needs --output-target");
      if (target.empty() && !output_target.empty()) throw Error("--output-target needs --target");
    }
    if (subcommand == "stats") {
      if (corpora.empty()) throw Error("stats needs at least one --corpus NAME=PATH");
      for (const auto& c : corpora)
        if (c.find('=') == std::string::npos || c.front() == '=' || c.back() == '=')
          throw Error("--corpus expects NAME=PATH, got '" + c + "'");
    }
    if (subcommand == "bpe-learn" && merges == 0) throw Error("--merges must be at least 1");
    if (subcommand == "evaluate") {
      if (!(term_weight >= 1.0)) throw Error("--term-weight must be at least 1");
      for (auto n : window_sizes)
        if (n == 0) throw Error("--window-sizes entries must be at least 1");
    }
  }
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::istream& in;
  std::shared_ptr<spdlog::logger> log;
};

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

// Errors are reported with the 1-based line number of the source file.
SentencePair prepare_pair(std::size_t id, const std::string& source, const std::string* target,
                          const TokenizerScheme& scheme, const AnnotationScheme* reserved = nullptr) {
  SentencePair pair;
  pair.id = id;
  try {
    pair.source = tokenize(unicode::nfc(source), scheme);
    if (target) pair.target = tokenize(unicode::nfc(*target), scheme);
    if (reserved) check_no_reserved(pair.source, *reserved);
  } catch (const Error& e) {
    throw Error(line_error(id + 1, e.what()));
  }
  if (pair.source.empty()) throw Error(line_error(id + 1, "blank source line"));
  return pair;
}

// Reads line-aligned batches from a source and an optional target.
class BatchReader {
 public:
  BatchReader(LineSource& source, LineSource* target) : source_(source), target_(target) {}

  std::size_t next(std::vector<std::string>& src, std::vector<std::string>& tgt) {
    src.clear();
    tgt.clear();
    std::string s, t;
    while (src.size() < kBatchSize) {
      const bool has_s = source_.next(s);
      const bool has_t = target_ ? target_->next(t) : has_s;
      if (has_s != has_t) fail_mismatch(has_s, src.size());
      if (!has_s) break;
      src.push_back(std::move(s));
      if (target_) tgt.push_back(std::move(t));
    }
    first_id_ = consumed_;
    consumed_ += src.size();
    return src.size();
  }

  std::size_t first_id() const { return first_id_; }

  void rewind() {
    source_.rewind();
    if (target_) target_->rewind();
    consumed_ = first_id_ = 0;
  }

 private:
  [[noreturn]] void fail_mismatch(bool source_longer, std::size_t in_batch) {
    std::size_t src_count = consumed_ + in_batch, tgt_count = src_count;
    std::string line;
    // The longer side has the line just read plus whatever remains.
    std::size_t rest = 1;
    LineSource& longer = source_longer ? source_ : *target_;
    while (longer.next(line)) ++rest;
    (source_longer ? src_count : tgt_count) += rest;
    throw Error("line count mismatch " + std::to_string(src_count) + " vs " + std::to_string(tgt_count));
  }

  LineSource& source_;
  LineSource* target_;
  std::size_t consumed_ = 0;
  std::size_t first_id_ = 0;
};

Terminology read_terminology(const std::string& path, const TokenizerScheme& scheme, Context& ctx) {
  InputFile file(path, ctx.in);
  try {
    return load_terminology(file.stream(), scheme);
  } catch (const Error& e) {
    throw Error("terminology '" + path + "': " + e.what());
  }
}

int cmd_annotate(const RunConfig& cfg, Context& ctx) {
  const TokenizerScheme scheme = cfg.scheme();
  AnnotateOptions options;
  options.mode = parse_annotation_mode(cfg.mode);
  options.policy = parse_resolution_kind(cfg.policy);
  options.rate = cfg.rate;
  options.seed = cfg.seed;
  options.workers = cfg.workers;
  const ResolutionPolicy policy{options.policy, options.seed};

  Matcher matcher(read_terminology(cfg.terminology, scheme, ctx), parse_casing_policy(cfg.casing));
  ctx.log->info("terminology: {} entries, {} unique pairs", matcher.terminology().size(),
                matcher.terminology().unique_pair_count());

  LineSource source(cfg.source, ctx.in);
  std::optional<LineSource> target;
  if (!cfg.target.empty()) target.emplace(cfg.target, ctx.in);
  BatchReader reader(source, target ? &*target : nullptr);

  std::vector<std::string> src, tgt;
  std::vector<std::size_t> grounded;
  std::size_t total = 0;
  while (const std::size_t n = reader.next(src, tgt)) {
    const std::size_t base = reader.first_id();
    std::vector<char> has(n, 0);
    parallel_for_chunks(n, cfg.workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const auto pair = prepare_pair(base + i, src[i], target ? &tgt[i] : nullptr, scheme, &options.scheme);
        has[i] = !constrain_sentence(pair, matcher, policy, options.scheme).empty();
      }
    });
    for (std::size_t i = 0; i < n; ++i)
      if (has[i]) grounded.push_back(base + i);
    total += n;
  }

  const auto selected = sample_for_annotation(total, grounded, cfg.rate, cfg.seed);
  std::vector<char> annotate(total, 0);
  for (auto id : selected) annotate[id] = 1;

  OutputFile text(cfg.output, ctx.out);
  std::optional<OutputFile> sidecar;
  if (!cfg.sidecar.empty()) sidecar.emplace(cfg.sidecar, ctx.out);

  reader.rewind();
  std::vector<std::string> text_lines, sidecar_lines;
  while (const std::size_t n = reader.next(src, tgt)) {
    const std::size_t base = reader.first_id();
    text_lines.assign(n, {});
    sidecar_lines.assign(sidecar ? n : 0, {});
    parallel_for_chunks(n, cfg.workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        auto pair = prepare_pair(base + i, src[i], target ? &tgt[i] : nullptr, scheme);
        const bool chosen = annotate[base + i];
        auto constraints = chosen ? constrain_sentence(pair, matcher, policy, options.scheme)
                                  : std::vector<ConstraintSpan>{};
        const auto record = make_record(std::move(pair), std::move(constraints), chosen, options.mode);
        text_lines[i] = join(record.annotated_source);
        if (sidecar) sidecar_lines[i] = sidecar_line(record);
      }
    });
    for (std::size_t i = 0; i < n; ++i) {
      text.stream() << text_lines[i] << '\n';
      if (sidecar) sidecar->stream() << sidecar_lines[i] << '\n';
    }
  }
  text.commit();
  if (sidecar) sidecar->commit();
  ctx.log->info("annotate: {} sentences, {} term-grounded, {} annotated ({})", total, grounded.size(),
                selected.size(), cfg.mode);
  return 0;
}

int cmd_strip(const RunConfig& cfg, Context& ctx) {
  InputFile input(cfg.input, ctx.in);
  OutputFile output(cfg.output, ctx.out);
  std::optional<OutputFile> sidecar;
  if (!cfg.sidecar.empty()) sidecar.emplace(cfg.sidecar, ctx.out);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input.stream(), line)) {
    ++line_no;
    StrippedSentence stripped;
    try {
      stripped = strip_annotation(split_on_space(unicode::nfc(line)));
    } catch (const Error& e) {
      throw Error(line_error(line_no, e.what()));
    }
    output.stream() << join(stripped.tokens) << '\n';
    if (sidecar) {
      nlohmann::json constraints = nlohmann::json::array();
      for (const auto& c : stripped.constraints)
        constraints.push_back({{"start", c.start},
                               {"end", c.end},
                               {"source_side", join(c.source_side)},
                               {"target", join(c.target)}});
      sidecar->stream() << nlohmann::json{{"id", line_no - 1},
                                          {"mode", std::string(to_string(stripped.mode))},
                                          {"constraints", std::move(constraints)}}
                               .dump()
                        << '\n';
    }
  }
  output.commit();
  if (sidecar) sidecar->commit();
  return 0;
}

int cmd_select(const RunConfig& cfg, Context& ctx) {
  const TokenizerScheme scheme = cfg.scheme();
  Matcher matcher(read_terminology(cfg.terminology, scheme, ctx), parse_casing_policy(cfg.casing));
  LineSource source(cfg.source, ctx.in);
  std::optional<LineSource> target;
  if (!cfg.target.empty()) target.emplace(cfg.target, ctx.in);
  BatchReader reader(source, target ? &*target : nullptr);

  OutputFile out_source(cfg.output, ctx.out);
  std::optional<OutputFile> out_target;
  if (target) out_target.emplace(cfg.output_target, ctx.out);

  CorpusStatsRow row{cfg.name.empty() ? cfg.source : cfg.name, 0, 0};
  std::vector<std::string> src, tgt;
  while (const std::size_t n = reader.next(src, tgt)) {
    const std::size_t base = reader.first_id();
    std::vector<char> keep(n, 0);
    parallel_for_chunks(n, cfg.workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        keep[i] = matcher.has_match(prepare_pair(base + i, src[i], nullptr, scheme).source);
    });
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      ++row.term_grounded_count;
      for (std::size_t k = 0; k < cfg.upsample_factor; ++k) {
        out_source.stream() << unicode::nfc(src[i]) << '\n';
        if (out_target) out_target->stream() << unicode::nfc(tgt[i]) << '\n';
      }
    }
    row.sentence_count += n;
  }

  std::optional<OutputFile> stats_out;
  if (!cfg.stats_path.empty()) {
    stats_out.emplace(cfg.stats_path, ctx.out);
    const CorpusStats stats{{row}};
    if (cfg.format == "json")
      stats_out->stream() << stats_to_json(stats).dump(2) << '\n';
    else
      stats_out->stream() << render_stats_table(stats);
  }
  out_source.commit();
  if (out_target) out_target->commit();
  if (stats_out) stats_out->commit();
  ctx.log->info("select: {} of {} sentences term-grounded, {} written", row.term_grounded_count,
                row.sentence_count, row.term_grounded_count * cfg.upsample_factor);
  return 0;
}

int cmd_stats(const RunConfig& cfg, Context& ctx) {
  const TokenizerScheme scheme = cfg.scheme();
  Matcher matcher(read_terminology(cfg.terminology, scheme, ctx), parse_casing_policy(cfg.casing));
  CorpusStats stats;
  for (const auto& spec : cfg.corpora) {
    const auto eq = spec.find('=');
    CorpusStatsRow row{spec.substr(0, eq), 0, 0};
    LineSource source(spec.substr(eq + 1), ctx.in);
    BatchReader reader(source, nullptr);
    std::vector<std::string> src, unused;
    while (const std::size_t n = reader.next(src, unused)) {
      const std::size_t base = reader.first_id();
      std::vector<char> hit(n, 0);
      parallel_for_chunks(n, cfg.workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
          hit[i] = matcher.has_match(prepare_pair(base + i, src[i], nullptr, scheme).source);
      });
      row.sentence_count += n;
      row.term_grounded_count += static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    }
    stats.rows.push_back(std::move(row));
  }
  OutputFile output(cfg.output.empty() ? "-" : cfg.output, ctx.out);
  if (cfg.format == "json")
    output.stream() << stats_to_json(stats).dump(2) << '\n';
  else
    output.stream() << render_stats_table(stats);
  output.commit();
  return 0;
}

int cmd_bpe_learn(const RunConfig& cfg, Context& ctx) {
  std::istringstream normalized;
  WordFrequencies words;
  {
    InputFile input(cfg.input, ctx.in);
    std::string line;
    std::size_t line_no = 0;
    Tokens tokens;
    while (std::getline(input.stream(), line)) {
      ++line_no;
      tokens.clear();
      try {
        tokenize_into(unicode::nfc(line), TokenizerScheme{}, tokens);
      } catch (const Error& e) {
        throw Error(line_error(line_no, e.what()));
      }
      for (auto& t : tokens) ++words[t];
    }
  }
  BpeLearnOptions options;
  options.num_merges = cfg.merges;
  options.min_frequency = cfg.min_frequency;
  options.end_of_word_marker = cfg.end_of_word;
  options.reserved = cfg.reserved;
  const MergeTable table = bpe_learn(words, options);
  OutputFile output(cfg.output, ctx.out);
  write_merge_table(table, output.stream());
  output.commit();
  ctx.log->info("bpe-learn: {} word types, {} merges learned", words.size(), table.merges().size());
  return 0;
}

int cmd_bpe_apply(const RunConfig& cfg, Context& ctx) {
  MergeTable table;
  {
    InputFile codes(cfg.codes, ctx.in);
    table = read_merge_table(codes.stream());
  }
  BpeSegmenter segmenter(table);
  InputFile input(cfg.input, ctx.in);
  OutputFile output(cfg.output, ctx.out);
  std::string line;
  std::size_t line_no = 0;
  Tokens pieces;
  while (std::getline(input.stream(), line)) {
    ++line_no;
    Tokens tokens;
    try {
      tokens = split_on_space(unicode::nfc(line));
    } catch (const Error& e) {
      throw Error(line_error(line_no, e.what()));
    }
    pieces.clear();
    segmenter.apply(tokens, pieces);
    output.stream() << join(pieces) << '\n';
  }
  output.commit();
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, Context& ctx) {
  EvalOptions options;
  options.windows = cfg.window_sizes;
  options.term_weight = cfg.term_weight;
  options.casing = parse_casing_policy(cfg.eval_casing);
  options.scheme = cfg.scheme();
  InputFile hyp(cfg.hypothesis, ctx.in);
  InputFile ref(cfg.reference, ctx.in);
  InputFile side(cfg.sidecar, ctx.in);
  const EvalReport report = evaluate_files(hyp.stream(), ref.stream(), side.stream(), options);
  OutputFile output(cfg.output.empty() ? "-" : cfg.output, ctx.out);
  if (cfg.format == "json")
    output.stream() << report_to_json(report).dump(2) << '\n';
  else
    output.stream() << render_report_table(report);
  output.commit();
  if (report.window_skipped)
    ctx.log->warn("evaluate: {} constraint instances missing from the reference were skipped",
                  report.window_skipped);
  return 0;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--casing", cfg.casing, "Term matching: insensitive or exact")
      ->check(CLI::IsMember({"insensitive", "exact"}))
      ->capture_default_str();
  cmd->add_option("--tokenizer", cfg.tokenizer, "Tokenizer scheme: whitespace, rule or char")
      ->check(CLI::IsMember({"whitespace", "rule", "char"}))
      ->capture_default_str();
  cmd->add_flag("--lowercase", cfg.lowercase, "Lowercase text before tokenizing");
  cmd->add_option("--workers", cfg.workers, "Worker threads (output does not depend on it)")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"termtag: terminology-constrained MT corpus toolkit"};
  app.name("termtag");
  app.require_subcommand(1, 1);

  auto* annotate = app.add_subcommand("annotate", "Tag term constraints in a source corpus (TADA or MASK)");
  annotate->add_option("--source", cfg.source, "Source corpus, one sentence per line ('-' for stdin)")->required();
  annotate->add_option("--target", cfg.target, "Reference translations, line-aligned (required for --policy train)");
  annotate->add_option("--terminology", cfg.terminology, "Terminology TSV (source<TAB>target)")->required();
  annotate->add_option("--mode", cfg.mode, "Annotation form: tada or mask")
      ->check(CLI::IsMember({"tada", "mask"}))
      ->capture_default_str();
  annotate->add_option("--policy", cfg.policy,
                       "Target variant choice: train (variant found in the reference) or test (random)")
      ->check(CLI::IsMember({"train", "test"}))
      ->capture_default_str();
  annotate->add_option("--rate", cfg.rate, "Annotation budget as a fraction of all sentences")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  annotate->add_option("--seed", cfg.seed, "Seed for sampling and random variant choice")->capture_default_str();
  annotate->add_option("--output", cfg.output, "Annotated source text ('-' for stdout)")->required();
  annotate->add_option("--sidecar", cfg.sidecar, "JSON-lines constraint records");
  add_common(annotate, cfg);

  auto* strip = app.add_subcommand("strip", "Remove annotation tags and recover constraints");
  strip->add_option("--input", cfg.input, "Annotated text")->capture_default_str();
  strip->add_option("--output", cfg.output, "Plain (or masked) source text")->required();
  strip->add_option("--sidecar", cfg.sidecar, "JSON-lines file for the recovered constraints");

  auto* select = app.add_subcommand("select", "Keep the term-grounded sentences of a corpus");
  select->add_option("--source", cfg.source, "Source corpus")->required();
  select->add_option("--target", cfg.target, "Target corpus, line-aligned");
  select->add_option("--terminology", cfg.terminology, "Terminology TSV")->required();
  select->add_option("--output-source", cfg.output, "Selected source lines")->required();
  select->add_option("--output-target", cfg.output_target, "Selected target lines");
  select->add_option("--upsample", cfg.upsample_factor, "Write every selected pair this many times")
      ->capture_default_str();
  select->add_option("--name", cfg.name, "Row name in the statistics (default: source path)");
  select->add_option("--stats", cfg.stats_path, "Write the statistics row here");
  select->add_option("--format", cfg.format, "Statistics format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  add_common(select, cfg);

  auto* stats = app.add_subcommand("stats", "Sentence and term-grounded counts per corpus");
  stats->add_option("--terminology", cfg.terminology, "Terminology TSV")->required();
  stats->add_option("--corpus", cfg.corpora, "NAME=PATH, repeatable; rows keep this order")->required();
  stats->add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  stats->add_option("--output", cfg.output, "Output path (default stdout)");
  add_common(stats, cfg);

  auto* learn = app.add_subcommand("bpe-learn", "Learn BPE merges from pre-tokenized text");
  learn->add_option("--input", cfg.input, "Training text")->capture_default_str();
  learn->add_option("--merges", cfg.merges, "Number of merge operations")->capture_default_str();
  learn->add_option("--min-frequency", cfg.min_frequency, "Stop when the best pair is rarer than this")
      ->capture_default_str();
  learn->add_option("--end-of-word", cfg.end_of_word, "End-of-word marker appended to each word (default none)");
  learn->add_option("--reserved", cfg.reserved, "Symbols never merged or split")->capture_default_str();
  learn->add_option("--output", cfg.output, "Merge table output")->required();

  auto* apply = app.add_subcommand("bpe-apply", "Segment pre-tokenized text with a merge table");
  apply->add_option("--codes", cfg.codes, "Merge table")->required();
  apply->add_option("--input", cfg.input, "Text to segment")->capture_default_str();
  apply->add_option("--output", cfg.output, "Segmented output")->required();

  auto* eval = app.add_subcommand("evaluate", "Score hypotheses: BLEU, exact match, window overlap, 1-TERm");
  eval->add_option("--hypothesis", cfg.hypothesis, "System output")->required();
  eval->add_option("--reference", cfg.reference, "Reference translations")->required();
  eval->add_option("--sidecar", cfg.sidecar, "Constraint records from annotate")->required();
  eval->add_option("--term-weight", cfg.term_weight, "Edit cost on reference term tokens")->capture_default_str();
  eval->add_option("--window-sizes", cfg.window_sizes, "Window overlap sizes")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--casing", cfg.eval_casing, "Term matching in hypotheses: exact or insensitive")
      ->check(CLI::IsMember({"insensitive", "exact"}))
      ->capture_default_str();
  eval->add_option("--tokenizer", cfg.tokenizer, "Tokenizer for hypothesis/reference lines")
      ->check(CLI::IsMember({"whitespace", "rule", "char"}))
      ->capture_default_str();
  eval->add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  eval->add_option("--output", cfg.output, "Report output (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto logger = std::make_shared<spdlog::logger>("termtag", sink);
  logger->set_pattern("[%l] %v");
  Context ctx{out, err, std::cin, logger};

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  try {
    cfg.validate();
    if (cfg.subcommand == "annotate") return cmd_annotate(cfg, ctx);
    if (cfg.subcommand == "strip") return cmd_strip(cfg, ctx);
    if (cfg.subcommand == "select") return cmd_select(cfg, ctx);
    if (cfg.subcommand == "stats") return cmd_stats(cfg, ctx);
    if (cfg.subcommand == "bpe-learn") return cmd_bpe_learn(cfg, ctx);
    if (cfg.subcommand == "bpe-apply") return cmd_bpe_apply(cfg, ctx);
    if (cfg.subcommand == "evaluate") return cmd_evaluate(cfg, ctx);
  } catch (const std::exception& e) {
    logger->error("{}", e.what());
    return 1;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace termtag::cli
