#include "sqb/probe/suite.hpp"

#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "sqb/common/csv.hpp"
#include "sqb/common/parallel.hpp"
#include "sqb/common/rng.hpp"

namespace sqb::probe {

namespace {

using corpus::SurveyQuestion;

struct SideData {
  std::vector<embed::TextItem> items;
  std::vector<std::string> labels;
};

struct SplitData {
  const SplitPlan* plan = nullptr;
  SideData train;
  SideData test;
  double majority = 0.0;
};

Eigen::MatrixXd encode_all(const embed::Encoder& encoder, std::span<const embed::TextItem> items) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(items.size()),
                    static_cast<Eigen::Index>(encoder.dim()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto v = encoder.encode(items[i]);
    X.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(
        v.data(), static_cast<Eigen::Index>(v.size()));
  }
  return X;
}

struct CellResult {
  double accuracy = 0.0;
  std::size_t dim = 0;
};

CellResult probe_cell(const embed::EmbeddingSource& source, const SplitData& data,
                      const TrainOptions& options) {
  auto encoder = source.fit(data.train.items);
  auto X_train = encode_all(*encoder, data.train.items);
  auto X_test = encode_all(*encoder, data.test.items);
  auto model = train_probe(X_train, data.train.labels, options);
  return {evaluate_probe(model, X_test, data.test.labels), encoder->dim()};
}

}  // namespace

std::vector<SplitPlan> probe_splits(std::span<const SurveyQuestion> questions,
                                    std::span<const ProbeTarget> targets, std::uint64_t seed) {
  std::vector<SplitPlan> plans;
  const auto split_seed = substream(seed, "probe.split");
  for (auto t : targets) plans.push_back(make_controlled_split(questions, t, split_seed));
  return plans;
}

std::vector<ProbeRow> run_probe_suite(std::span<const SurveyQuestion> questions,
                                      std::span<const embed::SourcePtr> sources,
                                      std::uint64_t seed, const ProbeSuiteOptions& options) {
  const auto plans = probe_splits(questions, options.targets, seed);

  std::unordered_map<std::string_view, const SurveyQuestion*> by_id;
  for (const auto& q : questions) by_id.emplace(q.id, &q);
  std::vector<SplitData> splits(plans.size());
  for (std::size_t t = 0; t < plans.size(); ++t) {
    auto& d = splits[t];
    d.plan = &plans[t];
    auto fill = [&](const std::vector<std::string>& ids, SideData& side) {
      for (const auto& id : ids) {
        const auto* q = by_id.at(id);
        side.items.push_back({q->id, q->text});
        side.labels.push_back(probe_label(*q, plans[t].target));
      }
    };
    fill(plans[t].train_ids, d.train);
    fill(plans[t].test_ids, d.test);
    d.majority = majority_baseline(d.train.labels, d.test.labels);
  }

  const std::size_t n_targets = plans.size();
  std::vector<CellResult> cells(sources.size() * n_targets);
  parallel_for(
      cells.size(),
      [&](std::size_t i) {
        cells[i] = probe_cell(*sources[i / n_targets], splits[i % n_targets], options.train);
      },
      options.threads);

  std::map<std::pair<std::size_t, std::size_t>, double> random_acc;
  for (std::size_t i = 0; i < cells.size(); ++i) random_acc[{i % n_targets, cells[i].dim}] = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  for (const auto& [key, _] : random_acc) keys.push_back(key);
  std::vector<double> key_acc(keys.size());
  parallel_for(
      keys.size(),
      [&](std::size_t i) {
        auto [t, dim] = keys[i];
        auto baseline = embed::make_random_source("random" + std::to_string(dim), dim,
                                                  embed::random_table_seed(seed, dim));
        key_acc[i] = probe_cell(*baseline, splits[t], options.train).accuracy;
      },
      options.threads);
  for (std::size_t i = 0; i < keys.size(); ++i) random_acc[keys[i]] = key_acc[i];

  std::vector<ProbeRow> rows;
  for (std::size_t t = 0; t < n_targets; ++t) {
    const auto& d = splits[t];
    rows.push_back({"majority", std::string(to_string(plans[t].target)), d.majority, d.majority,
                    std::numeric_limits<double>::quiet_NaN(), d.train.items.size(),
                    d.test.items.size(), seed});
  }
  for (std::size_t s = 0; s < sources.size(); ++s) {
    for (std::size_t t = 0; t < n_targets; ++t) {
      const auto& cell = cells[s * n_targets + t];
      const auto& d = splits[t];
      rows.push_back({sources[s]->name(), std::string(to_string(plans[t].target)), cell.accuracy,
                      d.majority, random_acc.at({t, cell.dim}), d.train.items.size(),
                      d.test.items.size(), seed});
    }
  }
  return rows;
}

std::string probe_report_csv(std::span<const ProbeRow> rows) {
  std::ostringstream out;
  csv::write_row(out, {"representation", "target", "accuracy", "majority_accuracy",
                       "random_accuracy", "n_train", "n_test", "seed"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.representation, r.target, csv::format_double(r.accuracy),
                         csv::format_double(r.majority_accuracy),
                         csv::format_double(r.random_accuracy), std::to_string(r.n_train),
                         std::to_string(r.n_test), std::to_string(r.seed)});
  }
  return out.str();
}

}  // namespace sqb::probe
