#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sqb/common/rng.hpp"
#include "sqb/corpus/taxonomy.hpp"
#include "sqb/embed/source.hpp"
#include "sqb/simdiff/scores.hpp"
#include "sqb/simdiff/suite.hpp"
#include "support/fixtures.hpp"

using namespace sqb;
using namespace sqb::simdiff;
using corpus::Formulation;
using corpus::Role;
using corpus::SurveyQuestion;
using sqb::fixtures::code_of;

namespace {

const std::vector<SurveyQuestion>& shipped() {
  static const auto qs =
      corpus::generate_corpus(corpus::default_taxonomy(), corpus::default_template_table(), 42);
  return qs;
}

SurveyQuestion make_q(std::string id, std::string text, Role role, std::string tmpl,
                      Formulation f = Formulation::DR, std::string triad = "t1") {
  SurveyQuestion q;
  q.id = std::move(id);
  q.text = std::move(text);
  q.basic = corpus::BasicConcept::Evaluation;
  q.concrete_id = q.id;
  q.triad_id = std::move(triad);
  q.role = role;
  q.formulation = f;
  q.template_id = std::move(tmpl);
  return q;
}

// One triad, one or two templates; ids encode role and template.
std::vector<SurveyQuestion> hand_triad(bool two_templates) {
  std::vector<SurveyQuestion> qs{make_q("r1", "r one", Role::Reference, "T1"),
                                 make_q("s1", "s one", Role::Similar, "T1"),
                                 make_q("d1", "d one", Role::Dissimilar, "T1")};
  if (two_templates) {
    qs.push_back(make_q("r2", "r two", Role::Reference, "T2", Formulation::InDe));
    qs.push_back(make_q("s2", "s two", Role::Similar, "T2", Formulation::InDe));
    qs.push_back(make_q("d2", "d two", Role::Dissimilar, "T2", Formulation::InDe));
  }
  return qs;
}

}  // namespace

TEST(H1, HandBuiltVectors) {
  std::map<std::string, embed::Vector, std::less<>> v{
      {"r1", {1, 0}}, {"s1", {1, 0.1}}, {"d1", {0, 1}}};
  auto s = h1_scores(hand_triad(false), cosine_similarity(v));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0].cos_near, 1.0 / std::sqrt(1.01), 1e-15);
  EXPECT_EQ(s[0].cos_far, 0.0);
  EXPECT_NEAR(s[0].diff, 0.995, 1e-3);
  EXPECT_EQ(s[0].diff, s[0].cos_near - s[0].cos_far);
  EXPECT_EQ(s[0].template_id, s[0].template_cmp);
  EXPECT_EQ(s[0].formulation, s[0].formulation_cmp);
}

TEST(H2, HandBuiltVectors) {
  std::map<std::string, embed::Vector, std::less<>> v{
      {"r1", {1, 0}}, {"s1", {1, 1}}, {"d1", {0, 1}},
      {"r2", {0.9, 0.1}}, {"s2", {1, 1}}, {"d2", {1, 1}}};
  auto s = h2_scores(hand_triad(true), cosine_similarity(v));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].template_id, "T1");
  EXPECT_EQ(s[0].template_cmp, "T2");
  EXPECT_EQ(s[0].formulation, Formulation::DR);
  EXPECT_EQ(s[0].formulation_cmp, Formulation::InDe);
  EXPECT_NEAR(s[0].cos_near, 0.9 / std::sqrt(0.82), 1e-15);
  EXPECT_EQ(s[0].cos_far, 0.0);
  EXPECT_NEAR(s[0].diff, 0.9939, 1e-4);
  // Reverse pair: cos(r2, r1) - cos(r2, d2).
  EXPECT_EQ(s[1].template_id, "T2");
  EXPECT_NEAR(s[1].diff, 0.9 / std::sqrt(0.82) - 1.0 / std::sqrt(0.82 * 2), 1e-12);
}

TEST(Scores, IdenticalEmbeddingsGiveZero) {
  std::map<std::string, embed::Vector, std::less<>> v;
  for (const auto& q : shipped()) v[q.id] = {0.3, -0.2, 0.5};
  auto sim = cosine_similarity(v);
  for (auto h : {Hypothesis::H1, Hypothesis::H2}) {
    for (const auto& s : scores(shipped(), h, sim)) EXPECT_EQ(s.diff, 0.0);
  }
}

TEST(Scores, MissingEmbedding) {
  std::map<std::string, embed::Vector, std::less<>> v{{"r1", {1, 0}}, {"s1", {1, 0}}};
  EXPECT_EQ(code_of([&] { h1_scores(hand_triad(false), cosine_similarity(v)); }),
            ErrorCode::MissingEmbedding);
}

TEST(Scores, IncompleteTriad) {
  auto qs = hand_triad(true);
  qs.erase(qs.begin() + 4);
  std::string msg;
  EXPECT_EQ(code_of([&] { index_triads(qs); }, &msg), ErrorCode::IncompleteTriad);
  EXPECT_NE(msg.find("t1"), std::string::npos);
  EXPECT_NE(msg.find("T2"), std::string::npos);
}

TEST(Scores, ShippedCounts) {
  auto h1 = jaccard_baseline(shipped(), Hypothesis::H1);
  auto h2 = jaccard_baseline(shipped(), Hypothesis::H2);
  EXPECT_EQ(h1.size(), 39u * 19u);
  EXPECT_EQ(h2.size(), 39u * 19u * 18u);
  std::set<corpus::BasicConcept> basics;
  for (const auto& s : h1) basics.insert(s.basic);
  EXPECT_EQ(distribution_summary(h1).size(), 13u);
}

TEST(Jaccard, H1IsExactlyZeroOnMinimalPairs) {
  for (const auto& s : jaccard_baseline(shipped(), Hypothesis::H1)) {
    EXPECT_EQ(s.diff, 0.0) << s.triad_id << " " << s.template_id;
  }
}

TEST(Jaccard, H2HalfVersusThreeQuarters) {
  // ref@T1 = {a,b,c,d,e,f}; ref@T2 = {a,b,c,d,g,h}: 4 shared of 8 unique.
  // dis@T1 = {a,b,c,d,e,f,g,h}: 6 shared of 8 unique.
  std::vector<SurveyQuestion> qs{
      make_q("r1", "a b c d e f", Role::Reference, "T1"),
      make_q("s1", "a b c d e y", Role::Similar, "T1"),
      make_q("d1", "a b c d e f g h", Role::Dissimilar, "T1"),
      make_q("r2", "a b c d g h", Role::Reference, "T2"),
      make_q("s2", "a b c d g y", Role::Similar, "T2"),
      make_q("d2", "a b c d g h i j", Role::Dissimilar, "T2")};
  auto s = jaccard_baseline(qs, Hypothesis::H2);
  EXPECT_DOUBLE_EQ(s[0].cos_near, 0.5);
  EXPECT_DOUBLE_EQ(s[0].cos_far, 0.75);
  EXPECT_DOUBLE_EQ(s[0].diff, -0.25);
}

TEST(PercentPositive, Counts) {
  std::vector<double> d{0.2, -0.1, 0.3, 0.0};
  EXPECT_EQ(percent_positive(d), 0.5);
  EXPECT_EQ(percent_positive(std::vector<double>(5, 0.0)), 0.0);
  EXPECT_EQ(code_of([] { percent_positive(std::vector<double>{}); }), ErrorCode::EmptySplit);
  std::vector<double> neg;
  for (double x : d) neg.push_back(-x);
  EXPECT_LT(percent_positive(d) + percent_positive(neg), 1.0);
}

TEST(PercentPositive, ComplementWithoutZeros) {
  Rng rng(2);
  std::vector<double> d(101), neg;
  for (auto& x : d) x = rng.uniform_open(-1, 1);
  for (double x : d) neg.push_back(-x);
  EXPECT_DOUBLE_EQ(percent_positive(d) + percent_positive(neg), 1.0);
}

TEST(Quantiles, OneToFive) {
  auto f = five_number({5, 3, 1, 4, 2});
  EXPECT_EQ(f.min, 1);
  EXPECT_EQ(f.q1, 2);
  EXPECT_EQ(f.median, 3);
  EXPECT_EQ(f.q3, 4);
  EXPECT_EQ(f.max, 5);
  EXPECT_EQ(f.n, 5u);
}

TEST(Quantiles, EvenCountUsesMidpoint) {
  std::vector<double> v{1, 2, 3, 4};
  EXPECT_EQ(quantile(v, 0.5), 2.5);
  EXPECT_EQ(quantile(v, 0.25), 1.75);
  auto c = five_number(std::vector<double>(7, 0.25));
  EXPECT_EQ(c.min, 0.25);
  EXPECT_EQ(c.q1, 0.25);
  EXPECT_EQ(c.median, 0.25);
  EXPECT_EQ(c.max, 0.25);
}

TEST(Ordering, IndependentOfInputOrder) {
  auto qs = shipped();
  std::mt19937_64 g(3);
  std::shuffle(qs.begin(), qs.end(), g);
  auto a = jaccard_baseline(shipped(), Hypothesis::H2);
  auto b = jaccard_baseline(qs, Hypothesis::H2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].triad_id, b[i].triad_id);
    EXPECT_EQ(a[i].template_id, b[i].template_id);
    EXPECT_EQ(a[i].template_cmp, b[i].template_cmp);
    EXPECT_EQ(a[i].diff, b[i].diff);
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    auto key = [](const TriadScore& s) {
      return std::tuple(std::string(corpus::to_string(s.basic)), s.triad_id, s.template_id, s.template_cmp);
    };
    EXPECT_LT(key(a[i - 1]), key(a[i]));
  }
}

TEST(Suite, DiffsBoundedAndCsvShape) {
  std::vector<embed::SourcePtr> sources{embed::make_tfidf_source("tfidf"),
                                        embed::make_random_source("random8", 8, 1)};
  auto sets = run_simdiff_suite(shipped(), sources);
  ASSERT_EQ(sets.size(), 6u);
  EXPECT_EQ(sets[0].representation, "jaccard");
  EXPECT_EQ(sets[0].vocab_scope, "none");
  EXPECT_EQ(sets[2].representation, "tfidf");
  EXPECT_EQ(sets[2].vocab_scope, "full_corpus");
  for (const auto& set : sets) {
    for (const auto& s : set.scores) {
      EXPECT_GE(s.diff, -2.0);
      EXPECT_LE(s.diff, 2.0);
    }
  }
  auto pp = percent_positive_csv(sets);
  EXPECT_EQ(pp.substr(0, pp.find('\n')),
            "representation,hypothesis,basic,n,percent_positive,vocab_scope,pairing");
  EXPECT_NE(pp.find("jaccard,H1,all,741,0,none,same_template"), std::string::npos);
  auto sc = scores_csv(sets);
  EXPECT_EQ(sc.substr(0, sc.find('\n')),
            "representation,hypothesis,basic,triad_id,template,template_cmp,cos_near,cos_far,diff");
  EXPECT_EQ(std::count(sc.begin(), sc.end(), '\n'), 1 + 3 * (741 + 13338));
  auto dist = distribution_csv(sets);
  EXPECT_EQ(dist.substr(0, dist.find('\n')), "representation,hypothesis,basic,n,min,q1,median,q3,max");
  EXPECT_EQ(std::count(dist.begin(), dist.end(), '\n'), 1 + 6 * 13);
}
