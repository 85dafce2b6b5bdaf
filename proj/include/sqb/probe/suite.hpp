#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sqb/corpus/types.hpp"
#include "sqb/embed/source.hpp"
#include "sqb/probe/logistic.hpp"
#include "sqb/probe/split.hpp"

namespace sqb::probe {

struct ProbeRow {
  std::string representation;
  std::string target;
  double accuracy = 0.0;
  double majority_accuracy = 0.0;
  /// Accuracy of a random-embedding probe with the representation's
  /// dimension on the same split; NaN for the majority rows.
  double random_accuracy = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::uint64_t seed = 0;
};

struct ProbeSuiteOptions {
  std::vector<ProbeTarget> targets = all_targets();
  TrainOptions train;
  unsigned threads = 0;
};

/// One split per target, shared by every source. Rows: a "majority" row per
/// target, then each source's rows in manifest order.
std::vector<ProbeRow> run_probe_suite(std::span<const corpus::SurveyQuestion> questions,
                                      std::span<const embed::SourcePtr> sources,
                                      std::uint64_t seed, const ProbeSuiteOptions& options = {});

std::vector<SplitPlan> probe_splits(std::span<const corpus::SurveyQuestion> questions,
                                    std::span<const ProbeTarget> targets, std::uint64_t seed);

std::string probe_report_csv(std::span<const ProbeRow> rows);

}  // namespace sqb::probe
