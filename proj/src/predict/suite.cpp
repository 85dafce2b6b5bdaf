#include "sqb/predict/suite.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "sqb/common/csv.hpp"
#include "sqb/common/error.hpp"
#include "sqb/common/parallel.hpp"
#include "sqb/common/rng.hpp"
#include "sqb/predict/design.hpp"
#include "sqb/predict/metrics.hpp"

namespace sqb::predict {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct OuterFold {
  std::vector<ResponseRecord> train;
  std::vector<ResponseRecord> test;
  std::vector<std::string> train_questions;
};

struct CellOutcome {
  std::vector<double> fold_r;
  std::vector<double> pred;
  std::vector<double> obs;
  std::string flags;
};

void append_flag(std::string& flags, const std::string& flag) {
  if (!flags.empty()) flags += ";";
  flags += flag;
}

PredictRow summarize(std::string representation, std::string model, const CellOutcome& cell,
                     std::uint64_t seed) {
  PredictRow row{std::move(representation), std::move(model), kNaN, kNaN, kNaN, kNaN, kNaN,
                 cell.obs.size(), seed, cell.flags};
  double sum = 0.0;
  for (double r : cell.fold_r) sum += r;
  row.r_mean = sum / static_cast<double>(cell.fold_r.size());
  auto pooled = pearson_r(Eigen::Map<const Eigen::VectorXd>(cell.pred.data(),
                                                            static_cast<Eigen::Index>(cell.pred.size())),
                          Eigen::Map<const Eigen::VectorXd>(cell.obs.data(),
                                                            static_cast<Eigen::Index>(cell.obs.size())));
  row.r_pooled = pooled.r;
  row.ci_low = pooled.ci_low;
  row.ci_high = pooled.ci_high;
  return row;
}

PredictRow failed_row(std::string representation, std::string model, const std::exception& e,
                      std::size_t n_test, std::uint64_t seed) {
  return {std::move(representation), std::move(model), kNaN, kNaN, kNaN, kNaN, kNaN, n_test, seed,
          std::string("failed: ") + e.what()};
}

double fold_r(const Eigen::VectorXd& pred, const Eigen::VectorXd& obs, std::size_t f) {
  auto r = try_pearson(pred, obs);
  if (!r) {
    fail(ErrorCode::ConstantPrediction,
         "correlation undefined in outer fold " + std::to_string(f) + " (constant vector)");
  }
  return *r;
}

std::vector<ForestParams> forest_grid(const PredictOptions& o, std::uint64_t seed) {
  std::vector<ForestParams> grid;
  for (auto trees : o.rf_n_trees) {
    for (auto leaf : o.rf_min_samples_leaf) {
      ForestParams p;
      p.n_trees = trees;
      p.min_samples_leaf = leaf;
      p.max_features = o.rf_max_features;
      p.max_depth = o.rf_max_depth;
      p.seed = seed;
      grid.push_back(p);
    }
  }
  return grid;
}

}  // namespace

BaselinePrediction baseline_predict(std::span<const ResponseRecord> train,
                                    std::span<const ResponseRecord> test) {
  if (train.empty()) fail(ErrorCode::EmptySplit, "baseline: no training responses");
  std::unordered_map<std::string_view, std::pair<double, std::size_t>> by_respondent;
  double total = 0.0;
  for (const auto& r : train) {
    auto& acc = by_respondent[r.respondent_id];
    acc.first += r.response;
    ++acc.second;
    total += r.response;
  }
  const double global = total / static_cast<double>(train.size());
  BaselinePrediction out;
  out.predictions.resize(static_cast<Eigen::Index>(test.size()));
  for (std::size_t i = 0; i < test.size(); ++i) {
    auto it = by_respondent.find(test[i].respondent_id);
    if (it == by_respondent.end()) {
      out.predictions[static_cast<Eigen::Index>(i)] = global;
      ++out.n_fallback;
    } else {
      out.predictions[static_cast<Eigen::Index>(i)] =
          it->second.first / static_cast<double>(it->second.second);
    }
  }
  return out;
}

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::Lasso ? "lasso" : "random_forest";
}

ModelKind parse_model(std::string_view name) {
  if (name == "lasso") return ModelKind::Lasso;
  if (name == "random_forest") return ModelKind::RandomForest;
  fail(ErrorCode::ConfigError, "unknown model '" + std::string(name) + "'");
}

std::vector<PredictRow> run_predictive_suite(const SurveyData& data,
                                             std::span<const embed::SourcePtr> sources,
                                             std::uint64_t seed, const PredictOptions& options) {
  if (data.records.empty()) fail(ErrorCode::EmptySplit, "no survey responses");
  const auto question_ids = data.question_ids();
  const auto outer = grouped_kfold(question_ids, options.outer_k, substream(seed, "predict.outer"));
  const auto inner_root = substream(seed, "predict.inner");

  std::vector<OuterFold> folds(outer.k);
  for (std::size_t f = 0; f < outer.k; ++f) {
    for (const auto& id : question_ids) {
      if (outer.fold_of.at(id) != f) folds[f].train_questions.push_back(id);
    }
  }
  for (const auto& rec : data.records) {
    const auto f = outer.fold_of.at(rec.question_id);
    for (std::size_t g = 0; g < outer.k; ++g) {
      (g == f ? folds[g].test : folds[g].train).push_back(rec);
    }
  }
  for (std::size_t f = 0; f < outer.k; ++f) {
    for (const auto& rec : folds[f].train) {
      if (outer.fold_of.at(rec.question_id) == f) {
        fail(ErrorCode::InternalInvariantViolation, "question leaked into outer training fold");
      }
    }
  }

  std::vector<PredictRow> rows;
  {
    CellOutcome cell;
    std::size_t fallbacks = 0;
    try {
      for (std::size_t f = 0; f < outer.k; ++f) {
        if (folds[f].test.empty()) continue;
        auto base = baseline_predict(folds[f].train, folds[f].test);
        fallbacks += base.n_fallback;
        Eigen::VectorXd obs(static_cast<Eigen::Index>(folds[f].test.size()));
        for (std::size_t i = 0; i < folds[f].test.size(); ++i) {
          obs[static_cast<Eigen::Index>(i)] = folds[f].test[i].response;
          cell.pred.push_back(base.predictions[static_cast<Eigen::Index>(i)]);
          cell.obs.push_back(folds[f].test[i].response);
        }
        cell.fold_r.push_back(fold_r(base.predictions, obs, f));
      }
      if (fallbacks > 0) append_flag(cell.flags, "respondent_fallback=" + std::to_string(fallbacks));
      auto row = summarize("baseline", "respondent_mean", cell, seed);
      row.delta_pct = 0.0;
      rows.push_back(std::move(row));
    } catch (const Error& e) {
      rows.push_back(failed_row("baseline", "respondent_mean", e, data.records.size(), seed));
    }
  }
  const double baseline_r = rows.front().r_mean;

  const BackgroundEncoding background(data.respondents);
  const auto rf_seed = substream(seed, "predict.forest");
  const std::size_t n_models = options.models.size();
  std::vector<PredictRow> cells(sources.size() * n_models);
  parallel_for(
      cells.size(),
      [&](std::size_t c) {
        const auto& source = *sources[c / n_models];
        const auto model = options.models[c % n_models];
        const std::string model_name(to_string(model));
        try {
          CellOutcome cell;
          for (std::size_t f = 0; f < outer.k; ++f) {
            const auto& fold = folds[f];
            if (fold.test.empty()) continue;
            std::vector<embed::TextItem> fit_on;
            for (const auto& id : fold.train_questions) {
              fit_on.push_back({id, data.question_texts.find(id)->second});
            }
            auto encoder = source.fit(fit_on);
            auto train = build_design(fold.train, background, *encoder, data.question_texts);
            auto test = build_design(fold.test, background, *encoder, data.question_texts);
            auto inner = grouped_kfold(fold.train_questions, options.inner_k,
                                       substream(inner_root, static_cast<std::uint64_t>(f)));
            Eigen::VectorXd pred;
            if (model == ModelKind::Lasso) {
              auto fit = lasso_cv(train.X, train.y, train.question_ids, inner, options.lambda_grid,
                                  options.lasso);
              pred = fit.predict(test.X);
            } else {
              auto grid = forest_grid(options, rf_seed);
              auto fit = rf_cv(train.X, train.y, train.question_ids, inner, grid);
              pred = fit.forest.predict(test.X);
            }
            cell.fold_r.push_back(fold_r(pred, test.y, f));
            cell.pred.insert(cell.pred.end(), pred.begin(), pred.end());
            cell.obs.insert(cell.obs.end(), test.y.begin(), test.y.end());
          }
          cells[c] = summarize(source.name(), model_name, cell, seed);
          cells[c].delta_pct = delta_pct(cells[c].r_mean, baseline_r);
        } catch (const Error& e) {
          cells[c] = failed_row(source.name(), model_name, e, data.records.size(), seed);
        }
      },
      options.threads);
  rows.insert(rows.end(), cells.begin(), cells.end());
  return rows;
}

std::string predict_report_csv(std::span<const PredictRow> rows) {
  std::ostringstream out;
  csv::write_row(out, {"representation", "model", "r_mean", "r_pooled", "ci_low", "ci_high",
                       "delta_pct", "n_test", "seed", "flags"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.representation, r.model, csv::format_double(r.r_mean),
                         csv::format_double(r.r_pooled), csv::format_double(r.ci_low),
                         csv::format_double(r.ci_high), csv::format_double(r.delta_pct),
                         std::to_string(r.n_test), std::to_string(r.seed), r.flags});
  }
  return out.str();
}

}  // namespace sqb::predict
