#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sqb::predict {

struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t, std::less<>> fold_of;
  /// Question ids per fold, in dealing order.
  std::vector<std::vector<std::string>> folds;
};

/// Sorted ids are shuffled with the seed and dealt round-robin into k folds.
/// Throws InfeasibleSplit when k < 2 or there are fewer ids than k.
FoldPlan grouped_kfold(std::span<const std::string> question_ids, std::size_t k,
                       std::uint64_t seed);

/// Row indices whose group is (not) in fold f. Throws InternalInvariantViolation
/// if a group is unknown to the plan or the two sides share a group.
struct FoldRows {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
FoldRows fold_rows(const FoldPlan& plan, std::span<const std::string> row_groups, std::size_t f);

}  // namespace sqb::predict
