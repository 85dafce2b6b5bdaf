#include "sqb/probe/split.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sqb/common/error.hpp"
#include "sqb/common/rng.hpp"

namespace sqb::probe {

using corpus::Property;
using corpus::SurveyQuestion;

namespace {

constexpr double kTrainShare = 0.8;

struct Candidate {
  std::vector<std::size_t> test_counts;
  double score = -1.0;
  double ratio_gap = 0.0;
};

// 0 -> train, 1 -> test, 2 -> dropped.
int side_of(const std::vector<std::size_t>& ranks, const std::vector<std::size_t>& test_counts) {
  bool all_test = true, all_train = true;
  for (std::size_t p = 0; p < ranks.size(); ++p) {
    if (ranks[p] < test_counts[p]) {
      all_train = false;
    } else {
      all_test = false;
    }
  }
  if (all_train) return 0;
  if (all_test) return 1;
  return 2;
}

SplitPlan concrete_group_split(std::span<const SurveyQuestion> questions) {
  SplitPlan plan;
  plan.target = ProbeTarget::ConcreteGroup;
  plan.disjoint_on = disjoint_properties(ProbeTarget::ConcreteGroup);
  std::set<std::string> train_groups;
  for (const auto& q : questions) {
    if (q.role == corpus::Role::Reference) {
      plan.train_ids.push_back(q.id);
      train_groups.insert(q.triad_id);
    }
  }
  for (const auto& q : questions) {
    if (q.role == corpus::Role::Similar && train_groups.contains(q.triad_id)) {
      plan.test_ids.push_back(q.id);
    } else if (q.role != corpus::Role::Reference) {
      ++plan.n_dropped;
    }
  }
  if (plan.train_ids.empty() || plan.test_ids.empty()) {
    fail(ErrorCode::InfeasibleSplit,
         "concrete_group probing needs reference and similar questions of the same triads");
  }
  return plan;
}

}  // namespace

std::string_view to_string(ProbeTarget target) {
  switch (target) {
    case ProbeTarget::LengthBin: return "length_bin";
    case ProbeTarget::Basic: return "basic";
    case ProbeTarget::ConcreteGroup: return "concrete_group";
    case ProbeTarget::Formulation: return "formulation";
  }
  return "unknown";
}

ProbeTarget parse_target(std::string_view name) {
  for (auto t : all_targets()) {
    if (to_string(t) == name) return t;
  }
  fail(ErrorCode::ConfigError, "unknown probe target '" + std::string(name) + "'");
}

const std::vector<ProbeTarget>& all_targets() {
  static const std::vector<ProbeTarget> targets = {ProbeTarget::LengthBin, ProbeTarget::Basic,
                                                   ProbeTarget::ConcreteGroup,
                                                   ProbeTarget::Formulation};
  return targets;
}

std::string probe_label(const SurveyQuestion& q, ProbeTarget target) {
  switch (target) {
    case ProbeTarget::LengthBin: return std::string(corpus::to_string(q.length_bin));
    case ProbeTarget::Basic: return std::string(corpus::to_string(q.basic));
    case ProbeTarget::ConcreteGroup: return q.triad_id;
    case ProbeTarget::Formulation: return std::string(corpus::to_string(q.formulation));
  }
  fail(ErrorCode::InternalInvariantViolation, "unhandled probe target");
}

std::vector<Property> disjoint_properties(ProbeTarget target) {
  switch (target) {
    case ProbeTarget::LengthBin: return {Property::ConcreteId, Property::Formulation};
    case ProbeTarget::Basic: return {Property::NTokens, Property::ConcreteId};
    case ProbeTarget::Formulation: return {Property::NTokens};
    case ProbeTarget::ConcreteGroup: return {Property::ConcreteId};
  }
  fail(ErrorCode::InternalInvariantViolation, "unhandled probe target");
}

SplitPlan make_controlled_split(std::span<const SurveyQuestion> questions, ProbeTarget target,
                                std::uint64_t seed) {
  if (questions.empty()) fail(ErrorCode::InfeasibleSplit, "empty corpus");
  if (target == ProbeTarget::ConcreteGroup) {
    auto plan = concrete_group_split(questions);
    validate_split(plan, questions);
    return plan;
  }

  const auto props = disjoint_properties(target);
  const std::size_t n = questions.size();

  // Seeded order of each property's values; a question's rank in that order
  // decides its side for a given prefix length.
  std::vector<std::vector<std::size_t>> ranks(n, std::vector<std::size_t>(props.size()));
  std::vector<std::size_t> n_values(props.size());
  for (std::size_t p = 0; p < props.size(); ++p) {
    std::set<std::string> distinct;
    for (const auto& q : questions) distinct.insert(corpus::property_value(q, props[p]));
    if (distinct.size() < 2) {
      fail(ErrorCode::InfeasibleSplit,
           "binding constraint: '" + std::string(corpus::to_string(props[p])) +
               "' has a single value, so train and test cannot be disjoint on it");
    }
    std::vector<std::string> order(distinct.begin(), distinct.end());
    Rng rng(substream(seed, "split." + std::string(to_string(target)) + "." +
                                std::string(corpus::to_string(props[p]))));
    rng.shuffle(std::span(order));
    std::unordered_map<std::string, std::size_t> rank_of;
    for (std::size_t i = 0; i < order.size(); ++i) rank_of.emplace(order[i], i);
    for (std::size_t i = 0; i < n; ++i) {
      ranks[i][p] = rank_of.at(corpus::property_value(questions[i], props[p]));
    }
    n_values[p] = order.size();
  }

  std::vector<std::string> labels(n);
  std::set<std::string> categories;
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = probe_label(questions[i], target);
    categories.insert(labels[i]);
  }

  Candidate best;
  std::vector<std::size_t> counts(props.size(), 1);
  std::size_t rejected_for_coverage = 0;
  for (;;) {
    std::size_t n_train = 0, n_test = 0;
    std::set<std::string> train_categories;
    for (std::size_t i = 0; i < n; ++i) {
      int side = side_of(ranks[i], counts);
      if (side == 0) {
        ++n_train;
        train_categories.insert(labels[i]);
      } else if (side == 1) {
        ++n_test;
      }
    }
    if (n_train > 0 && n_test > 0) {
      if (train_categories.size() != categories.size()) {
        ++rejected_for_coverage;
      } else {
        double score = std::min(n_train / kTrainShare, n_test / (1.0 - kTrainShare));
        double gap = std::abs(static_cast<double>(n_train) / (n_train + n_test) - kTrainShare);
        if (score > best.score || (score == best.score && gap < best.ratio_gap)) {
          best = {counts, score, gap};
        }
      }
    }
    // Odometer over test-prefix lengths 1..n_values-1 per property.
    std::size_t p = 0;
    while (p < props.size()) {
      if (++counts[p] < n_values[p]) break;
      counts[p] = 1;
      ++p;
    }
    if (p == props.size()) break;
  }

  if (best.score < 0.0) {
    std::string why = rejected_for_coverage
                          ? "every assignment leaves some '" + std::string(to_string(target)) +
                                "' category out of train"
                          : "no assignment leaves both sides non-empty";
    fail(ErrorCode::InfeasibleSplit, "binding constraint: " + why);
  }

  SplitPlan plan;
  plan.target = target;
  plan.disjoint_on = props;
  for (std::size_t i = 0; i < n; ++i) {
    int side = side_of(ranks[i], best.test_counts);
    if (side == 0) {
      plan.train_ids.push_back(questions[i].id);
    } else if (side == 1) {
      plan.test_ids.push_back(questions[i].id);
    } else {
      ++plan.n_dropped;
    }
  }
  validate_split(plan, questions);
  return plan;
}

void validate_split(const SplitPlan& plan, std::span<const SurveyQuestion> questions) {
  auto violation = [&](const std::string& what) {
    fail(ErrorCode::InternalInvariantViolation,
         "split for '" + std::string(to_string(plan.target)) + "': " + what);
  };
  if (plan.train_ids.empty() || plan.test_ids.empty()) violation("empty side");

  std::unordered_map<std::string_view, const SurveyQuestion*> by_id;
  for (const auto& q : questions) by_id.emplace(q.id, &q);
  auto lookup = [&](const std::string& id) {
    auto it = by_id.find(id);
    if (it == by_id.end()) violation("unknown question id '" + id + "'");
    return it->second;
  };

  std::unordered_set<std::string_view> train(plan.train_ids.begin(), plan.train_ids.end());
  for (const auto& id : plan.test_ids) {
    if (train.contains(id)) violation("question '" + id + "' on both sides");
  }
  for (auto prop : plan.disjoint_on) {
    std::set<std::string> train_values;
    for (const auto& id : plan.train_ids) train_values.insert(property_value(*lookup(id), prop));
    for (const auto& id : plan.test_ids) {
      auto value = property_value(*lookup(id), prop);
      if (train_values.contains(value)) {
        violation(std::string(corpus::to_string(prop)) + " value '" + value +
                  "' occurs on both sides");
      }
    }
  }
  std::set<std::string> train_labels;
  for (const auto& id : plan.train_ids) train_labels.insert(probe_label(*lookup(id), plan.target));
  if (plan.target == ProbeTarget::ConcreteGroup) {
    for (const auto& id : plan.test_ids) {
      if (!train_labels.contains(probe_label(*lookup(id), plan.target))) {
        violation("test group absent from train");
      }
      if (lookup(id)->role != corpus::Role::Similar) violation("test question is not similar-role");
    }
    for (const auto& id : plan.train_ids) {
      if (lookup(id)->role != corpus::Role::Reference) violation("train question is not reference-role");
    }
  } else {
    std::set<std::string> all_labels;
    for (const auto& q : questions) all_labels.insert(probe_label(q, plan.target));
    if (train_labels != all_labels) violation("a target category is missing from train");
  }
}

}  // namespace sqb::probe
