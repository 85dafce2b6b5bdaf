#pragma once

#include <span>
#include <string>
#include <vector>

#include "sqb/embed/source.hpp"
#include "sqb/simdiff/scores.hpp"

namespace sqb::simdiff {

struct ScoreSet {
  std::string representation;
  Hypothesis hypothesis{};
  /// "full_corpus" when the representation's vocabulary was fitted on every
  /// question being scored, "pretrained" for external vectors, "none" for
  /// the Jaccard baseline.
  std::string vocab_scope;
  std::vector<TriadScore> scores;
};

struct SimdiffOptions {
  bool include_jaccard = true;
  std::vector<Hypothesis> hypotheses = {Hypothesis::H1, Hypothesis::H2};
};

/// Sources are fitted on the whole corpus. Jaccard sets come first, then each
/// source in manifest order; hypotheses inner.
std::vector<ScoreSet> run_simdiff_suite(std::span<const corpus::SurveyQuestion> questions,
                                        std::span<const embed::SourcePtr> sources,
                                        const SimdiffOptions& options = {});

std::string scores_csv(std::span<const ScoreSet> sets);
std::string percent_positive_csv(std::span<const ScoreSet> sets);
std::string distribution_csv(std::span<const ScoreSet> sets);

}  // namespace sqb::simdiff
