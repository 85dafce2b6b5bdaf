#include "sqb/predict/folds.hpp"

#include <algorithm>
#include <set>

#include "sqb/common/error.hpp"
#include "sqb/common/rng.hpp"

namespace sqb::predict {

FoldPlan grouped_kfold(std::span<const std::string> question_ids, std::size_t k,
                       std::uint64_t seed) {
  std::vector<std::string> ids(question_ids.begin(), question_ids.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    fail(ErrorCode::BadInput, "grouped_kfold: duplicate question id");
  }
  if (k < 2) {
    fail(ErrorCode::InfeasibleSplit, "grouped k-fold needs k >= 2, got " + std::to_string(k));
  }
  if (ids.size() < k) {
    fail(ErrorCode::InfeasibleSplit, "grouped k-fold with k=" + std::to_string(k) + " needs at least " +
                                         std::to_string(k) + " questions, got " +
                                         std::to_string(ids.size()));
  }
  Rng rng(seed);
  rng.shuffle(std::span(ids));
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    plan.fold_of.emplace(ids[i], i % k);
    plan.folds[i % k].push_back(ids[i]);
  }
  return plan;
}

FoldRows fold_rows(const FoldPlan& plan, std::span<const std::string> row_groups, std::size_t f) {
  FoldRows rows;
  std::set<std::string_view> train_groups, test_groups;
  for (std::size_t i = 0; i < row_groups.size(); ++i) {
    auto it = plan.fold_of.find(row_groups[i]);
    if (it == plan.fold_of.end()) {
      fail(ErrorCode::InternalInvariantViolation,
           "question '" + row_groups[i] + "' is not in the fold plan");
    }
    if (it->second == f) {
      rows.test.push_back(i);
      test_groups.insert(row_groups[i]);
    } else {
      rows.train.push_back(i);
      train_groups.insert(row_groups[i]);
    }
  }
  for (auto g : test_groups) {
    if (train_groups.contains(g)) {
      fail(ErrorCode::InternalInvariantViolation,
           "question '" + std::string(g) + "' on both sides of fold " + std::to_string(f));
    }
  }
  return rows;
}

}  // namespace sqb::predict
