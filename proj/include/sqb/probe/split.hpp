#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqb/corpus/types.hpp"

namespace sqb::probe {

enum class ProbeTarget { LengthBin, Basic, ConcreteGroup, Formulation };

std::string_view to_string(ProbeTarget target);
ProbeTarget parse_target(std::string_view name);
const std::vector<ProbeTarget>& all_targets();

/// The label a probe predicts for a question. For ConcreteGroup this is the
/// triad id, shared by a reference concept and its similar partner.
std::string probe_label(const corpus::SurveyQuestion& question, ProbeTarget target);

/// Properties whose value sets must not overlap between train and test when
/// probing `target`.
std::vector<corpus::Property> disjoint_properties(ProbeTarget target);

struct SplitPlan {
  ProbeTarget target{};
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::vector<corpus::Property> disjoint_on;
  /// Questions in neither side (their property values straddle the sides).
  std::size_t n_dropped = 0;
};

/// Builds a train/test partition under the target's disjointness rules.
/// Constraint groups are ordered by a seeded shuffle; the search picks, per
/// property, how many leading groups go to test, maximizing the size of the
/// 80/20 split that can be carved from the kept questions.
/// ConcreteGroup is fixed: reference-role questions train, similar-role
/// questions test. Throws InfeasibleSplit naming the binding constraint.
SplitPlan make_controlled_split(std::span<const corpus::SurveyQuestion> questions,
                                ProbeTarget target, std::uint64_t seed);

/// Throws InternalInvariantViolation if the plan overlaps on ids or on any
/// disjoint_on property, has an empty side, or lacks a target category in
/// train.
void validate_split(const SplitPlan& plan, std::span<const corpus::SurveyQuestion> questions);

}  // namespace sqb::probe
