#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "termtag/augment.hpp"
#include "termtag/corpus.hpp"
#include "termtag/error.hpp"

namespace termtag {
namespace {

const ConstraintSpan kSarsCov{5, 6, {"SARS-CoV"}, {"SARS-CoV"}};

std::vector<ConstraintSpan> multi_term_constraints(const Tokens& src) {
  std::istringstream tsv(oracle::kMultiTermTerminology);
  const Matcher m(load_terminology(tsv));
  const Tokens ref = oracle::words("vaccin vaccin vaccins épidémie de coronavirus");
  return resolve_targets(src, m.find_spans(src), &ref, m, {}, 0);
}

TEST(Render, SingleTerm) {
  const Tokens src = oracle::words(oracle::kSingleTermSource);
  const std::vector<ConstraintSpan> cs = {kSarsCov};
  EXPECT_EQ(join(render_tada(src, cs)), oracle::kSingleTermTada);
  EXPECT_EQ(join(render_mask(src, cs)), oracle::kSingleTermMask);
}

TEST(Render, MultiTerm) {
  const Tokens src = oracle::words(oracle::kMultiTermSource);
  const auto cs = multi_term_constraints(src);
  ASSERT_EQ(cs.size(), 4u);
  EXPECT_EQ(join(render_tada(src, cs)), oracle::kMultiTermTada);
  EXPECT_EQ(join(render_mask(src, cs)), oracle::kMultiTermMask);
  EXPECT_NE(join(render_mask(src, cs)).find("<S> MASK MASK <C> épidémie de coronavirus </C>"),
            std::string::npos);
}

TEST(Render, NoConstraintsUnchanged) {
  const Tokens src = oracle::words(oracle::kSingleTermSource);
  EXPECT_EQ(render_tada(src, {}), src);
  EXPECT_EQ(render_mask(src, {}), src);
}

TEST(Render, Errors) {
  const Tokens src = {"a", "b", "c"};
  const std::vector<ConstraintSpan> overlap = {{0, 2, {"a", "b"}, {"x"}}, {1, 3, {"b", "c"}, {"y"}}};
  EXPECT_THROW(render_tada(src, overlap), Error);
  const std::vector<ConstraintSpan> out_of_range = {{2, 4, {"c", "d"}, {"x"}}};
  EXPECT_THROW(render_mask(src, out_of_range), Error);
  const Tokens tagged = {"a", "<C>", "c"};
  const std::vector<ConstraintSpan> ok = {{0, 1, {"a"}, {"x"}}};
  try {
    render_tada(tagged, ok);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("reserved symbol collision"), std::string::npos);
  }
}

TEST(Strip, SingleTerm) {
  const auto s = strip_annotation(oracle::words(oracle::kSingleTermTada));
  EXPECT_EQ(s.mode, AnnotationMode::kTada);
  EXPECT_EQ(join(s.tokens), oracle::kSingleTermSource);
  ASSERT_EQ(s.constraints.size(), 1u);
  EXPECT_EQ(s.constraints[0], (RecoveredConstraint{5, 6, {"SARS-CoV"}, {"SARS-CoV"}}));
}

TEST(Strip, Plain) {
  const Tokens src = oracle::words("hello world .");
  const auto s = strip_annotation(src);
  EXPECT_EQ(s.mode, AnnotationMode::kPlain);
  EXPECT_EQ(s.tokens, src);
  EXPECT_TRUE(s.constraints.empty());
}

TEST(Strip, MalformedIsRejected) {
  for (const std::string bad :
       {"a <S> b", "a <S> b <C> c", "a <C> b </C>", "a </C>", "<S> <C> x </C>", "<S> x <C> </C>",
        "<S> x <S> y <C> z </C>", "MASK a", "<S> MASK b <C> x </C>",
        "<S> MASK <C> x </C> <S> y <C> z </C>"}) {
    EXPECT_THROW(strip_annotation(oracle::words(bad)), Error) << bad;
  }
}

std::vector<ConstraintSpan> random_constraints(std::mt19937_64& rng, const Tokens& src) {
  std::vector<ConstraintSpan> cs;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (rng() % 3) continue;
    const std::size_t len = 1 + std::min<std::size_t>(rng() % 4, src.size() - i - 1);
    cs.push_back({i, i + len, Tokens(src.begin() + i, src.begin() + i + len), oracle::random_tokens(rng, 1, 4, 30)});
    i += len;
  }
  return cs;
}

TEST(RenderProperty, StripInvertsRender) {
  std::mt19937_64 rng(2021);
  for (int round = 0; round < 3000; ++round) {
    const Tokens src = oracle::random_tokens(rng, 1, 30, 40);
    const auto cs = random_constraints(rng, src);
    const Tokens tada = render_tada(src, cs);
    const Tokens mask = render_mask(src, cs);
    const auto st = strip_annotation(tada);
    const auto sm = strip_annotation(mask);
    ASSERT_EQ(st.tokens, src);
    ASSERT_EQ(st.constraints.size(), cs.size());
    ASSERT_EQ(sm.constraints.size(), cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      EXPECT_EQ(st.constraints[k].start, cs[k].start);
      EXPECT_EQ(st.constraints[k].source_side, cs[k].source_term);
      EXPECT_EQ(st.constraints[k].target, cs[k].chosen_target);
      EXPECT_EQ(sm.constraints[k].source_side.size(), cs[k].length());
      EXPECT_EQ(sm.constraints[k].target, cs[k].chosen_target);
    }
    // Tag balance and the two renderings agree outside the masked tokens.
    ASSERT_EQ(tada.size(), mask.size());
    for (std::size_t i = 0; i < tada.size(); ++i)
      if (mask[i] != "MASK") EXPECT_EQ(mask[i], tada[i]);
    const auto count = [&](const std::string& t) { return std::count(tada.begin(), tada.end(), t); };
    EXPECT_EQ(count("<S>"), static_cast<long>(cs.size()));
    EXPECT_EQ(count("<C>"), static_cast<long>(cs.size()));
    EXPECT_EQ(count("</C>"), static_cast<long>(cs.size()));
    if (!cs.empty()) EXPECT_EQ(sm.mode, AnnotationMode::kMask);
  }
}

TEST(Sampling, BudgetOf100) {
  std::vector<std::size_t> grounded;
  for (std::size_t i = 0; i < 400; ++i) grounded.push_back(i * 2 + 1);
  const auto a = sample_for_annotation(1000, grounded, 0.1, 7);
  ASSERT_EQ(a.size(), 100u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  for (auto id : a) EXPECT_TRUE(std::binary_search(grounded.begin(), grounded.end(), id));
  EXPECT_EQ(a, sample_for_annotation(1000, grounded, 0.1, 7));
  EXPECT_NE(a, sample_for_annotation(1000, grounded, 0.1, 8));
  EXPECT_TRUE(sample_for_annotation(1000, grounded, 0.0, 7).empty());
  EXPECT_EQ(sample_for_annotation(1000, grounded, 1.0, 7), grounded);
}

TEST(Sampling, Budget) {
  EXPECT_EQ(annotation_budget(1000, 0.1), 100u);
  EXPECT_EQ(annotation_budget(999, 0.1), 99u);
  EXPECT_EQ(annotation_budget(10, 0.3), 3u);
  EXPECT_THROW(annotation_budget(10, 1.5), Error);
  EXPECT_THROW(annotation_budget(10, -0.1), Error);
}

TEST(AnnotateCorpus, SingleTermRateOne) {
  Terminology t;
  t.add({"SARS-CoV"}, {"SARS-CoV"});
  const Matcher m(t);
  const std::vector<SentencePair> pairs = {
      {0, oracle::words(oracle::kSingleTermSource), oracle::words("le SARS-CoV et le MERS-CoV")}};
  AnnotateOptions o;
  o.rate = 1.0;
  for (auto mode : {AnnotationMode::kTada, AnnotationMode::kMask}) {
    o.mode = mode;
    const auto r = annotate_corpus(pairs, m, o);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(join(r[0].annotated_source),
              mode == AnnotationMode::kTada ? oracle::kSingleTermTada : oracle::kSingleTermMask);
  }
}

TEST(AnnotateCorpus, NoTermsAllPlain) {
  Terminology t;
  t.add({"zzz"}, {"y"});
  const Matcher m(t);
  std::vector<SentencePair> pairs;
  std::mt19937_64 rng(4);
  for (std::size_t i = 0; i < 50; ++i) pairs.push_back({i, oracle::random_tokens(rng, 1, 10, 10), Tokens{"y"}});
  AnnotateOptions o;
  o.rate = 1.0;
  for (const auto& r : annotate_corpus(pairs, m, o)) {
    EXPECT_EQ(r.mode, AnnotationMode::kPlain);
    EXPECT_EQ(r.annotated_source, r.pair.source);
  }
}

TEST(AnnotateCorpus, ComposesStagesAndIgnoresWorkerCount) {
  std::mt19937_64 rng(8);
  Terminology t;
  for (int i = 0; i < 15; ++i) {
    t.add(oracle::random_tokens(rng, 1, 2, 12), oracle::random_tokens(rng, 1, 2, 12));
    t.add(oracle::random_tokens(rng, 1, 2, 12), oracle::random_tokens(rng, 1, 2, 12));
  }
  const Matcher m(t);
  std::vector<SentencePair> pairs;
  for (std::size_t i = 0; i < 100; ++i)
    pairs.push_back({i, oracle::random_tokens(rng, 1, 15, 12), oracle::random_tokens(rng, 1, 15, 12)});
  for (auto kind : {ResolutionKind::kTrainReferenceMatch, ResolutionKind::kTestRandom}) {
    AnnotateOptions o;
    o.rate = 0.3;
    o.seed = 77;
    o.policy = kind;
    o.mode = AnnotationMode::kMask;
    const auto records = annotate_corpus(pairs, m, o);

    // Hand composition of the same stages.
    const ResolutionPolicy policy{kind, o.seed};
    std::vector<std::vector<ConstraintSpan>> constraints;
    std::vector<std::size_t> grounded;
    for (const auto& p : pairs) {
      const Tokens* ref = kind == ResolutionKind::kTrainReferenceMatch ? &*p.target : nullptr;
      constraints.push_back(resolve_targets(p.source, m.find_spans(p.source), ref, m, policy, p.id));
      if (!constraints.back().empty()) grounded.push_back(p.id);
    }
    const auto chosen = sample_for_annotation(pairs.size(), grounded, o.rate, o.seed);
    std::size_t annotated = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const bool pick = std::binary_search(chosen.begin(), chosen.end(), i);
      const Tokens expected = pick ? render_mask(pairs[i].source, constraints[i]) : pairs[i].source;
      EXPECT_EQ(records[i].annotated_source, expected);
      EXPECT_EQ(records[i].pair, pairs[i]);
      annotated += records[i].mode != AnnotationMode::kPlain;
    }
    EXPECT_EQ(annotated, std::min(grounded.size(), annotation_budget(pairs.size(), o.rate)));

    for (unsigned workers : {2u, 3u, 8u}) {
      o.workers = workers;
      EXPECT_EQ(annotate_corpus(pairs, m, o), records);
    }
  }
}

TEST(AnnotateCorpus, ReservedCollisionAnywhereIsAnError) {
  Terminology t;
  t.add({"a"}, {"b"});
  const Matcher m(t);
  const std::vector<SentencePair> pairs = {{0, {"a"}, Tokens{"b"}}, {1, {"x", "MASK"}, Tokens{"y"}}};
  AnnotateOptions o;
  o.rate = 0.5;
  EXPECT_THROW(annotate_corpus(pairs, m, o), Error);
}

}  // namespace
}  // namespace termtag
