#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqb/corpus/types.hpp"
#include "sqb/embed/vector.hpp"

namespace sqb::simdiff {

enum class Hypothesis { H1, H2 };

std::string_view to_string(Hypothesis h);

struct TriadScore {
  Hypothesis hypothesis{};
  corpus::BasicConcept basic{};
  std::string triad_id;
  std::string template_id;
  /// Equal to template_id for H1.
  std::string template_cmp;
  corpus::Formulation formulation{};
  corpus::Formulation formulation_cmp{};
  double cos_near = 0.0;
  double cos_far = 0.0;
  double diff = 0.0;
};

/// Reference, similar and dissimilar questions of one triad under one template.
struct TriadCell {
  const corpus::SurveyQuestion* reference = nullptr;
  const corpus::SurveyQuestion* similar = nullptr;
  const corpus::SurveyQuestion* dissimilar = nullptr;
};

/// (triad_id, template_id) -> cell. Throws IncompleteTriad if any role is
/// missing for a pair that has at least one question.
using TriadIndex = std::map<std::pair<std::string, std::string>, TriadCell>;
TriadIndex index_triads(std::span<const corpus::SurveyQuestion> questions);

using Similarity =
    std::function<double(const corpus::SurveyQuestion&, const corpus::SurveyQuestion&)>;

/// cos_near = sim(ref, similar), cos_far = sim(ref, dissimilar), per
/// (triad, template).
std::vector<TriadScore> h1_scores(std::span<const corpus::SurveyQuestion> questions,
                                  const Similarity& sim);

/// cos_near = sim(ref@t, ref@t'), cos_far = sim(ref@t, dissimilar@t), for
/// every ordered template pair t != t' within a triad.
std::vector<TriadScore> h2_scores(std::span<const corpus::SurveyQuestion> questions,
                                  const Similarity& sim);

std::vector<TriadScore> scores(std::span<const corpus::SurveyQuestion> questions,
                               Hypothesis hypothesis, const Similarity& sim);

/// Cosine over vectors keyed by question id.
Similarity cosine_similarity(const std::map<std::string, embed::Vector, std::less<>>& vectors);

std::vector<TriadScore> jaccard_baseline(std::span<const corpus::SurveyQuestion> questions,
                                         Hypothesis hypothesis);

/// Share of scores with diff > 0. Throws EmptySplit on an empty list.
double percent_positive(std::span<const double> diffs);
double percent_positive(std::span<const TriadScore> scores);

struct FiveNumber {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
  std::size_t n = 0;
};

/// Linear interpolation between order statistics at position p*(n-1).
double quantile(std::span<const double> sorted, double p);
FiveNumber five_number(std::vector<double> values);

/// Five-number summary of diff per basic concept, in canonical basic order;
/// concepts without scores are omitted.
std::vector<std::pair<corpus::BasicConcept, FiveNumber>> distribution_summary(
    std::span<const TriadScore> scores);

}  // namespace sqb::simdiff
