#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "sqb/common/csv.hpp"
#include "sqb/common/rng.hpp"
#include "sqb/embed/sentence_store.hpp"
#include "sqb/embed/source.hpp"
#include "sqb/predict/design.hpp"
#include "sqb/predict/folds.hpp"
#include "sqb/predict/forest.hpp"
#include "sqb/predict/lasso.hpp"
#include "sqb/predict/metrics.hpp"
#include "sqb/predict/suite.hpp"
#include "sqb/predict/survey.hpp"
#include "support/fixtures.hpp"

using namespace sqb;
using namespace sqb::predict;
using sqb::fixtures::code_of;

namespace {

Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

IngestOptions two_vars() {
  IngestOptions o;
  o.background = {"gender", "region"};
  return o;
}

SurveyData ingest(const std::string& responses, const std::string& questions,
                  const std::string& scales, const IngestOptions& o) {
  return ingest_survey(csv::parse(responses, "responses"), csv::parse(questions, "questions"),
                       csv::parse(scales, "scales"), o);
}

const char* kQuestions = "question_id,text\nq1,How happy are you?\nq2,How much do you trust people?\n";
const char* kScales = "question_id,min,max\nq1,0,10\nq2,1,5\n";

ResponseRecord rec(std::string r, std::string q, double v) { return {std::move(r), std::move(q), v}; }

}  // namespace

TEST(Ingest, RescalesAndDropsMissing) {
  auto d = ingest("idno,gender,region,q1,q2\n1,f,north,7,3\n2,m,,88,5\n3,m,south,10,NA\n",
                  kQuestions, kScales, two_vars());
  ASSERT_EQ(d.records.size(), 4u);
  EXPECT_EQ(d.n_missing, 2u);
  EXPECT_DOUBLE_EQ(d.records[0].response, 0.7);
  EXPECT_DOUBLE_EQ(d.records[1].response, 0.5);
  EXPECT_EQ(d.records[2].respondent_id, "2");
  EXPECT_DOUBLE_EQ(d.records[2].response, 1.0);
  EXPECT_EQ(d.respondents.size(), 3u);
  EXPECT_EQ(d.respondents[1].background[1], (std::pair<std::string, std::string>{"region", "missing"}));
  EXPECT_EQ(d.question_ids(), (std::vector<std::string>{"q1", "q2"}));
  EXPECT_EQ(d.question_texts.at("q2"), "How much do you trust people?");
  for (const auto& r : d.records) {
    EXPECT_GE(r.response, 0.0);
    EXPECT_LE(r.response, 1.0);
  }
}

TEST(Ingest, Errors) {
  auto o = two_vars();
  std::string msg;
  EXPECT_EQ(code_of([&] { ingest("idno,gender,region,q1,q2\n1,f,n,11,3\n", kQuestions, kScales, o); }, &msg),
            ErrorCode::ScaleViolation);
  EXPECT_NE(msg.find("q1"), std::string::npos);
  EXPECT_EQ(code_of([&] { ingest("idno,gender,region,q1,q2\n1,f,n,5,0\n", kQuestions, kScales, o); }),
            ErrorCode::ScaleViolation);
  EXPECT_EQ(code_of([&] { ingest("idno,gender,region,q1,q9\n1,f,n,5,3\n", kQuestions, kScales, o); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { ingest("idno,gender,q1,q2\n1,f,5,3\n", kQuestions, kScales, o); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { ingest("idno,gender,region,q1,q2\n1,f,n,5,3\n1,m,s,4,2\n", kQuestions, kScales, o); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { ingest("idno,gender,region,q1,q2\n1,f,n,five,3\n", kQuestions, kScales, o); }),
            ErrorCode::FormatError);
}

TEST(Folds, NinetyFourQuestionsTenFolds) {
  std::vector<std::string> ids;
  for (int i = 0; i < 94; ++i) ids.push_back("q" + std::to_string(i));
  auto plan = grouped_kfold(ids, 10, 3);
  std::map<std::size_t, int> sizes;
  std::set<std::string> seen;
  for (const auto& f : plan.folds) {
    ++sizes[f.size()];
    for (const auto& id : f) EXPECT_TRUE(seen.insert(id).second);
  }
  EXPECT_EQ(sizes, (std::map<std::size_t, int>{{9, 6}, {10, 4}}));
  EXPECT_EQ(seen.size(), 94u);
  for (const auto& [id, f] : plan.fold_of) {
    EXPECT_NE(std::find(plan.folds[f].begin(), plan.folds[f].end(), id), plan.folds[f].end());
  }
  EXPECT_EQ(grouped_kfold(ids, 10, 3).folds, plan.folds);
  EXPECT_NE(grouped_kfold(ids, 10, 4).folds, plan.folds);
  std::vector<std::string> reversed(ids.rbegin(), ids.rend());
  EXPECT_EQ(grouped_kfold(reversed, 10, 3).folds, plan.folds);
}

TEST(Folds, Errors) {
  std::vector<std::string> ids{"a", "b", "c"};
  EXPECT_EQ(code_of([&] { grouped_kfold(ids, 1, 0); }), ErrorCode::InfeasibleSplit);
  EXPECT_EQ(code_of([&] { grouped_kfold(ids, 4, 0); }), ErrorCode::InfeasibleSplit);
  std::vector<std::string> dup{"a", "b", "a"};
  EXPECT_EQ(code_of([&] { grouped_kfold(dup, 2, 0); }), ErrorCode::BadInput);
}

TEST(Folds, RowsNeverLeak) {
  std::vector<std::string> ids{"a", "b", "c", "d", "e"};
  auto plan = grouped_kfold(ids, 5, 1);
  std::vector<std::string> groups{"a", "b", "a", "c", "e", "d", "b"};
  for (std::size_t f = 0; f < 5; ++f) {
    auto rows = fold_rows(plan, groups, f);
    EXPECT_EQ(rows.train.size() + rows.test.size(), groups.size());
    std::set<std::string> tr, te;
    for (auto i : rows.train) tr.insert(groups[i]);
    for (auto i : rows.test) te.insert(groups[i]);
    for (const auto& g : te) EXPECT_FALSE(tr.count(g));
  }
  std::vector<std::string> unknown{"a", "zz"};
  EXPECT_EQ(code_of([&] { fold_rows(plan, unknown, 0); }), ErrorCode::InternalInvariantViolation);
}

TEST(Design, WidthsAdd) {
  std::vector<Respondent> people{{"r1", {{"gender", "f"}, {"region", "n"}}},
                                 {"r2", {{"gender", "m"}, {"region", "n"}}}};
  BackgroundEncoding bg(people);
  EXPECT_EQ(bg.width(), 3u);
  EXPECT_EQ(bg.columns(), (std::vector<std::string>{"gender=f", "gender=m", "region=n"}));
  auto store = std::make_shared<embed::SentenceEmbeddingStore>();
  store->dim = 4;
  store->model_name = "m";
  for (int q = 1; q <= 3; ++q) store->entries["q" + std::to_string(q)] = {double(q), 0, 1, 2};
  auto enc = embed::make_precomputed_source("s", store)->fit({});
  std::map<std::string, std::string, std::less<>> texts{{"q1", "a"}, {"q2", "b"}, {"q3", "c"}};
  std::vector<ResponseRecord> records;
  for (const char* r : {"r1", "r2"}) {
    for (const char* q : {"q1", "q2", "q3"}) records.push_back(rec(r, q, 0.5));
  }
  auto d = build_design(records, bg, *enc, texts);
  EXPECT_EQ(d.X.rows(), 6);
  EXPECT_EQ(d.X.cols(), 7);
  EXPECT_EQ(d.X.row(4), (Eigen::RowVectorXd(7) << 0, 1, 1, 2, 0, 1, 2).finished());
  records.push_back(rec("r9", "q1", 0.1));
  EXPECT_EQ(code_of([&] { build_design(records, bg, *enc, texts); }), ErrorCode::SchemaError);
}

TEST(Design, ZeroWidthBackgroundAndTrainOnlyVocabulary) {
  std::vector<Respondent> people{{"r1", {}}};
  BackgroundEncoding bg(people);
  EXPECT_EQ(bg.width(), 0u);
  std::vector<embed::TextItem> train{{"q1", "how happy are you"}};
  auto enc = embed::make_tf_source("tf")->fit(train);
  std::map<std::string, std::string, std::less<>> texts{{"q1", "how happy are you"}, {"q2", "trust people"}};
  auto d = build_design(std::vector{rec("r1", "q1", 0.2), rec("r1", "q2", 0.4)}, bg, *enc, texts);
  EXPECT_EQ(d.X.cols(), 4);
  EXPECT_EQ(d.X.row(0), Eigen::RowVectorXd::Ones(4));
  EXPECT_EQ(d.X.row(1), Eigen::RowVectorXd::Zero(4));
}

TEST(Lasso, LambdaZeroMatchesOls) {
  Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    Eigen::MatrixXd X = random_matrix(rng, 30, 4);
    Eigen::VectorXd y = random_matrix(rng, 30, 1);
    LassoOptions opt;
    opt.tol = 1e-12;
    auto m = lasso_fit(X, y, 0.0, opt);
    Eigen::MatrixXd A(30, 5);
    A << Eigen::VectorXd::Ones(30), X;
    Eigen::VectorXd ols = (A.transpose() * A).ldlt().solve(A.transpose() * y);
    EXPECT_NEAR(m.intercept, ols(0), 1e-6);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(m.beta(j), ols(j + 1), 1e-6);
  }
}

TEST(Lasso, LambdaMaxZeroesEverything) {
  Rng rng(2);
  Eigen::MatrixXd X = random_matrix(rng, 25, 6);
  Eigen::VectorXd y = X.col(0) + 0.1 * random_matrix(rng, 25, 1);
  double lmax = lasso_lambda_max(X, y);
  Eigen::RowVectorXd xbar = X.colwise().mean();
  Eigen::VectorXd yc = y.array() - y.mean();
  double manual = ((X.rowwise() - xbar).transpose() * yc).cwiseAbs().maxCoeff() / 25.0;
  EXPECT_NEAR(lmax, manual, 1e-14);
  auto m = lasso_fit(X, y, lmax);
  EXPECT_TRUE((m.beta.array() == 0.0).all());
  EXPECT_DOUBLE_EQ(m.intercept, y.mean());
  auto below = lasso_fit(X, y, 0.99 * lmax);
  EXPECT_GT(below.beta.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Lasso, LambdaMaxExactAcrossOffsets) {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd X = random_matrix(rng, 20 + t, 3 + t % 5);
    Eigen::VectorXd y = X.rowwise().sum() + random_matrix(rng, 20 + t, 1);
    y.array() += 3.0 + t;
    auto m = lasso_fit(X, y, lasso_lambda_max(X, y));
    EXPECT_TRUE((m.beta.array() == 0.0).all()) << t;
  }
}

TEST(Lasso, OneDimensionalSoftThreshold) {
  Eigen::VectorXd x(5), y(5);
  x << -2, -1, 0, 1, 2;
  y = 2 * x;
  const double var = 2.0;  // population variance of x
  for (double lambda : {0.01, 0.1, 1.0}) {
    auto m = lasso_fit(x, y, lambda);
    EXPECT_NEAR(m.beta(0), 2.0 - lambda / var, 1e-10);
  }
  EXPECT_EQ(lasso_fit(x, y, 4.0).beta(0), 0.0);
}

TEST(Lasso, KktAndMonotoneObjective) {
  Rng rng(3);
  Eigen::MatrixXd X = random_matrix(rng, 40, 8);
  Eigen::VectorXd y = X.col(1) - 0.5 * X.col(3) + 0.3 * random_matrix(rng, 40, 1);
  LassoOptions opt;
  opt.record_objective = true;
  opt.tol = 1e-10;
  const double lambda = 0.05;
  auto m = lasso_fit(X, y, lambda, opt);
  EXPECT_TRUE(m.converged);
  for (std::size_t i = 1; i < m.objective_trace.size(); ++i) {
    EXPECT_LE(m.objective_trace[i], m.objective_trace[i - 1] + 1e-15);
  }
  Eigen::VectorXd resid = y - m.predict(X);
  Eigen::VectorXd g = X.transpose() * resid / 40.0;
  for (int j = 0; j < 8; ++j) {
    if (m.beta(j) != 0.0) {
      EXPECT_LT(std::abs(g(j) - lambda * (m.beta(j) > 0 ? 1 : -1)), 1e-5);
    } else {
      EXPECT_LE(std::abs(g(j)), lambda + 1e-5);
    }
  }
}

TEST(Lasso, ErrorsAndGrid) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Ones(3, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(3);
  X(0, 0) = std::nan("");
  EXPECT_EQ(code_of([&] { lasso_fit(X, y, 0.1); }), ErrorCode::BadInput);
  X(0, 0) = 1;
  EXPECT_EQ(code_of([&] { lasso_fit(X, y, -1.0); }), ErrorCode::ConfigError);
  auto grid = logspace_grid(1e-4, 1e1, 20);
  ASSERT_EQ(grid.size(), 20u);
  EXPECT_NEAR(grid.front(), 10.0, 1e-12);
  EXPECT_NEAR(grid.back(), 1e-4, 1e-18);
  EXPECT_TRUE(std::is_sorted(grid.rbegin(), grid.rend()));
  EXPECT_EQ(code_of([] { logspace_grid(1.0, 0.1, 3); }), ErrorCode::ConfigError);
  std::vector<std::string> groups{"a", "b", "c"};
  auto plan = grouped_kfold(groups, 3, 0);
  EXPECT_EQ(code_of([&] { lasso_cv(X, y, groups, plan, std::vector<double>{}); }), ErrorCode::ConfigError);
}

TEST(Standardizer, PopulationScale) {
  Eigen::MatrixXd X(4, 2);
  X << 1, 5, 2, 5, 3, 5, 4, 5;
  auto s = Standardizer::fit(X);
  EXPECT_DOUBLE_EQ(s.mean(0), 2.5);
  EXPECT_DOUBLE_EQ(s.scale(0), std::sqrt(1.25));
  EXPECT_EQ(s.scale(1), 1.0);
  auto Z = s.apply(X);
  EXPECT_NEAR(Z.col(0).squaredNorm() / 4, 1.0, 1e-12);
  EXPECT_TRUE((Z.col(1).array() == 0.0).all());
}

TEST(Forest, SingleTreeOverfitsDistinctRows) {
  Rng rng(4);
  Eigen::MatrixXd X = random_matrix(rng, 30, 3);
  Eigen::VectorXd y = random_matrix(rng, 30, 1);
  ForestParams p;
  p.n_trees = 1;
  p.bootstrap = false;
  p.max_features = 1.0;
  auto forest = rf_fit(X, y, p);
  auto pred = forest.predict(X);
  for (int i = 0; i < 30; ++i) EXPECT_EQ(pred(i), y(i));
}

TEST(Forest, ConstantTarget) {
  Rng rng(5);
  Eigen::MatrixXd X = random_matrix(rng, 25, 4);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(25, 0.37);
  for (std::size_t leaf : {1u, 5u}) {
    ForestParams p;
    p.n_trees = 7;
    p.min_samples_leaf = leaf;
    p.seed = leaf;
    auto pred = rf_fit(X, y, p).predict(random_matrix(rng, 10, 4));
    for (int i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(pred(i), 0.37);
  }
}

TEST(Forest, DepthOneStepFunction) {
  Eigen::MatrixXd X(20, 1);
  Eigen::VectorXd y(20);
  for (int i = 0; i < 20; ++i) {
    X(i, 0) = i;
    y(i) = i < 13 ? 1.0 + 0.01 * i : 5.0 - 0.01 * i;
  }
  std::vector<std::size_t> sample(20);
  for (std::size_t i = 0; i < 20; ++i) sample[i] = i;
  ForestParams p;
  p.max_depth = 1;
  p.max_features = 1.0;
  auto tree = RegressionTree::fit(X, y, sample, p, 0);
  ASSERT_EQ(tree.nodes().size(), 3u);
  EXPECT_EQ(tree.nodes()[0].feature, 0);
  EXPECT_EQ(tree.nodes()[0].threshold, 12.5);
  EXPECT_EQ(tree.depth(), 1u);
  EXPECT_NEAR(tree.predict(X.row(0)), y.head(13).mean(), 1e-12);
  EXPECT_NEAR(tree.predict(X.row(19)), y.tail(7).mean(), 1e-12);
}

TEST(Forest, DuplicatedTrainingSetGivesSamePredictions) {
  Rng rng(6);
  Eigen::MatrixXd X = random_matrix(rng, 20, 2);
  Eigen::VectorXd y = X.col(0).array().square() + X.col(1).array();
  Eigen::MatrixXd X2(40, 2);
  X2 << X, X;
  Eigen::VectorXd y2(40);
  y2 << y, y;
  ForestParams p;
  p.n_trees = 5;
  p.bootstrap = false;
  p.max_features = 1.0;
  p.seed = 9;
  Eigen::MatrixXd probe = random_matrix(rng, 15, 2);
  EXPECT_EQ(rf_fit(X, y, p).predict(probe), rf_fit(X2, y2, p).predict(probe));
}

TEST(Forest, DeterministicAcrossThreadCounts) {
  Rng rng(7);
  Eigen::MatrixXd X = random_matrix(rng, 50, 5);
  Eigen::VectorXd y = X.col(2) + random_matrix(rng, 50, 1);
  ForestParams p;
  p.n_trees = 12;
  p.seed = 3;
  auto a = rf_fit(X, y, p).predict(X);
  p.threads = 4;
  EXPECT_EQ(rf_fit(X, y, p).predict(X), a);
  p.seed = 4;
  EXPECT_NE(rf_fit(X, y, p).predict(X), a);
}

TEST(Forest, CvRejectsBadGrid) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Ones(4, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
  std::vector<std::string> groups{"a", "b", "c", "d"};
  auto plan = grouped_kfold(groups, 2, 0);
  EXPECT_EQ(code_of([&] { rf_cv(X, y, groups, plan, std::vector<ForestParams>{}); }), ErrorCode::ConfigError);
  ForestParams bad;
  bad.min_samples_leaf = 0;
  EXPECT_EQ(code_of([&] { rf_cv(X, y, groups, plan, std::vector<ForestParams>{bad}); }), ErrorCode::ConfigError);
}

TEST(Baseline, RespondentMeans) {
  std::vector<ResponseRecord> train{rec("a", "q1", 0.2), rec("a", "q2", 0.4), rec("b", "q1", 0.9)};
  std::vector<ResponseRecord> test{rec("a", "q3", 0.0), rec("b", "q3", 0.0), rec("c", "q3", 0.0)};
  auto p = baseline_predict(train, test);
  EXPECT_DOUBLE_EQ(p.predictions(0), 0.3);
  EXPECT_DOUBLE_EQ(p.predictions(1), 0.9);
  EXPECT_DOUBLE_EQ(p.predictions(2), 0.5);
  EXPECT_EQ(p.n_fallback, 1u);
}

TEST(Pearson, HandValues) {
  Eigen::VectorXd a(4), b(4);
  a << 1, 2, 3, 4;
  b << 2, 1, 4, 3;
  auto r = pearson_r(a, b);
  EXPECT_NEAR(r.r, 0.6, 1e-15);
  EXPECT_EQ(r.n, 4u);
  EXPECT_LE(r.ci_low, r.r);
  EXPECT_GE(r.ci_high, r.r);
  EXPECT_TRUE(std::isnan(r.delta_pct));
  EXPECT_NEAR(pearson_r(a, a).r, 1.0, 1e-15);
  EXPECT_NEAR(pearson_r(a, Eigen::VectorXd(-a)).r, -1.0, 1e-15);
  EXPECT_NEAR(pearson_r(a, b, 0.3).delta_pct, 100.0, 1e-12);
  EXPECT_NEAR(delta_pct(0.411, 0.187), 119.786, 1e-3);
}

TEST(Pearson, FisherInterval) {
  Rng rng(8);
  Eigen::VectorXd a = random_matrix(rng, 50, 1);
  Eigen::VectorXd b = a + random_matrix(rng, 50, 1);
  auto r = pearson_r(a, b);
  double se = 1.0 / std::sqrt(47.0);
  EXPECT_NEAR(r.ci_low, std::tanh(std::atanh(r.r) - 1.96 * se), 1e-12);
  EXPECT_NEAR(r.ci_high, std::tanh(std::atanh(r.r) + 1.96 * se), 1e-12);
}

TEST(Pearson, AffineInvariance) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd a = random_matrix(rng, 12, 1);
    Eigen::VectorXd b = random_matrix(rng, 12, 1);
    Eigen::VectorXd a2 = (3.5 * a).array() - 2.0;
    Eigen::VectorXd b2 = (0.25 * b).array() + 7.0;
    EXPECT_NEAR(pearson_r(a2, b2).r, pearson_r(a, b).r, 1e-12);
  }
}

TEST(Pearson, Errors) {
  Eigen::VectorXd c = Eigen::VectorXd::Constant(5, 0.4), v(5);
  v << 1, 2, 3, 4, 5;
  EXPECT_EQ(code_of([&] { pearson_r(c, v); }), ErrorCode::ConstantPrediction);
  EXPECT_EQ(code_of([&] { pearson_r(v.head(2), v.head(2)); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([&] { pearson_r(v.head(4), v); }), ErrorCode::BadInput);
  EXPECT_FALSE(try_pearson(c, v).has_value());
}

TEST(Suite, SyntheticInteractionIsRecoveredByForest) {
  auto dir = fixtures::fresh_dir("predict_suite");
  auto fx = fixtures::write_synthetic_survey(dir, 40, 20, 1);
  IngestOptions ingest_opt;
  ingest_opt.background = {"group", "region"};
  auto data = load_survey(fx.responses, fx.questions, fx.scales, ingest_opt);
  EXPECT_GT(data.n_missing, 0u);
  auto store = std::make_shared<embed::SentenceEmbeddingStore>(embed::load_sentence_embeddings(fx.embeddings));
  std::vector<embed::SourcePtr> sources{embed::make_precomputed_source("synthetic", store)};
  PredictOptions opt;
  opt.outer_k = 5;
  opt.inner_k = 3;
  opt.lambda_grid = logspace_grid(1e-3, 1e-1, 3);
  opt.rf_n_trees = {20};
  opt.rf_min_samples_leaf = {1, 5};
  auto rows = run_predictive_suite(data, sources, 11, opt);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].representation, "baseline");
  EXPECT_EQ(rows[0].model, "respondent_mean");
  EXPECT_LT(rows[0].r_pooled, 0.1);
  EXPECT_EQ(rows[1].model, "lasso");
  EXPECT_EQ(rows[2].model, "random_forest");
  EXPECT_GT(rows[2].r_pooled, 0.99);
  EXPECT_GT(rows[2].r_mean, 0.99);
  EXPECT_EQ(rows[2].n_test, data.records.size());
  EXPECT_LE(rows[2].ci_low, rows[2].r_pooled);
  EXPECT_GE(rows[2].ci_high, rows[2].r_pooled);
  EXPECT_NEAR(rows[2].delta_pct, delta_pct(rows[2].r_mean, rows[0].r_mean), 1e-9);

  auto csv_text = predict_report_csv(rows);
  EXPECT_EQ(csv_text.substr(0, csv_text.find('\n')),
            "representation,model,r_mean,r_pooled,ci_low,ci_high,delta_pct,n_test,seed,flags");
  EXPECT_EQ(predict_report_csv(run_predictive_suite(data, sources, 11, opt)), csv_text);
}

TEST(Suite, FailingCellIsReportedNotFatal) {
  auto dir = fixtures::fresh_dir("predict_fail");
  auto fx = fixtures::write_synthetic_survey(dir, 10, 10, 2);
  IngestOptions ingest_opt;
  ingest_opt.background = {"group", "region"};
  auto data = load_survey(fx.responses, fx.questions, fx.scales, ingest_opt);
  auto store = std::make_shared<embed::SentenceEmbeddingStore>();
  store->dim = 1;
  store->model_name = "partial";
  store->entries["q001"] = {1.0};
  std::vector<embed::SourcePtr> sources{embed::make_precomputed_source("partial", store)};
  PredictOptions opt;
  opt.outer_k = 2;
  opt.inner_k = 2;
  opt.models = {ModelKind::Lasso};
  opt.lambda_grid = {0.01};
  auto rows = run_predictive_suite(data, sources, 1, opt);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(std::isnan(rows[1].r_mean));
  EXPECT_NE(rows[1].flags.find("failed"), std::string::npos);
}
