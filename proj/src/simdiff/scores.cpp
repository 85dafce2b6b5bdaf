#include "sqb/simdiff/scores.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "sqb/common/error.hpp"

namespace sqb::simdiff {

using corpus::Role;
using corpus::SurveyQuestion;

std::string_view to_string(Hypothesis h) { return h == Hypothesis::H1 ? "H1" : "H2"; }

TriadIndex index_triads(std::span<const SurveyQuestion> questions) {
  TriadIndex index;
  for (const auto& q : questions) {
    auto& cell = index[{q.triad_id, q.template_id}];
    const SurveyQuestion** slot = q.role == Role::Reference ? &cell.reference
                                  : q.role == Role::Similar ? &cell.similar
                                                            : &cell.dissimilar;
    if (*slot) {
      fail(ErrorCode::IncompleteTriad, "triad '" + q.triad_id + "' has two " +
                                           std::string(corpus::to_string(q.role)) +
                                           " questions for template '" + q.template_id + "'");
    }
    *slot = &q;
  }
  for (const auto& [key, cell] : index) {
    if (!cell.reference || !cell.similar || !cell.dissimilar) {
      fail(ErrorCode::IncompleteTriad,
           "triad '" + key.first + "' is incomplete for template '" + key.second + "'");
    }
  }
  return index;
}

namespace {

TriadScore make_score(Hypothesis h, const SurveyQuestion& anchor, const SurveyQuestion& cmp,
                      double near, double far) {
  TriadScore s;
  s.hypothesis = h;
  s.basic = anchor.basic;
  s.triad_id = anchor.triad_id;
  s.template_id = anchor.template_id;
  s.template_cmp = cmp.template_id;
  s.formulation = anchor.formulation;
  s.formulation_cmp = cmp.formulation;
  s.cos_near = near;
  s.cos_far = far;
  s.diff = near - far;
  return s;
}

void sort_scores(std::vector<TriadScore>& scores) {
  std::sort(scores.begin(), scores.end(), [](const TriadScore& a, const TriadScore& b) {
    return std::tuple(corpus::to_string(a.basic), std::string_view(a.triad_id),
                      std::string_view(a.template_id), std::string_view(a.template_cmp)) <
           std::tuple(corpus::to_string(b.basic), std::string_view(b.triad_id),
                      std::string_view(b.template_id), std::string_view(b.template_cmp));
  });
}

}  // namespace

std::vector<TriadScore> h1_scores(std::span<const SurveyQuestion> questions,
                                  const Similarity& sim) {
  std::vector<TriadScore> out;
  for (const auto& [key, cell] : index_triads(questions)) {
    out.push_back(make_score(Hypothesis::H1, *cell.reference, *cell.similar,
                             sim(*cell.reference, *cell.similar),
                             sim(*cell.reference, *cell.dissimilar)));
  }
  sort_scores(out);
  return out;
}

std::vector<TriadScore> h2_scores(std::span<const SurveyQuestion> questions,
                                  const Similarity& sim) {
  auto index = index_triads(questions);
  std::vector<TriadScore> out;
  for (auto it = index.begin(); it != index.end();) {
    auto end = std::find_if(it, index.end(),
                            [&](const auto& e) { return e.first.first != it->first.first; });
    for (auto a = it; a != end; ++a) {
      const auto& ref = *a->second.reference;
      double far = sim(ref, *a->second.dissimilar);
      for (auto b = it; b != end; ++b) {
        if (a == b) continue;
        out.push_back(make_score(Hypothesis::H2, ref, *b->second.reference,
                                 sim(ref, *b->second.reference), far));
      }
    }
    it = end;
  }
  sort_scores(out);
  return out;
}

std::vector<TriadScore> scores(std::span<const SurveyQuestion> questions, Hypothesis hypothesis,
                               const Similarity& sim) {
  return hypothesis == Hypothesis::H1 ? h1_scores(questions, sim) : h2_scores(questions, sim);
}

Similarity cosine_similarity(const std::map<std::string, embed::Vector, std::less<>>& vectors) {
  return [&vectors](const SurveyQuestion& a, const SurveyQuestion& b) {
    auto lookup = [&](const SurveyQuestion& q) -> const embed::Vector& {
      auto it = vectors.find(q.id);
      if (it == vectors.end()) fail(ErrorCode::MissingEmbedding, "no vector for '" + q.id + "'");
      return it->second;
    };
    return embed::cosine(lookup(a), lookup(b));
  };
}

std::vector<TriadScore> jaccard_baseline(std::span<const SurveyQuestion> questions,
                                         Hypothesis hypothesis) {
  return scores(questions, hypothesis, [](const SurveyQuestion& a, const SurveyQuestion& b) {
    return embed::jaccard(a.text, b.text);
  });
}

double percent_positive(std::span<const double> diffs) {
  if (diffs.empty()) fail(ErrorCode::EmptySplit, "percent_positive of an empty score list");
  auto positive = std::count_if(diffs.begin(), diffs.end(), [](double d) { return d > 0.0; });
  return static_cast<double>(positive) / static_cast<double>(diffs.size());
}

double percent_positive(std::span<const TriadScore> scores) {
  std::vector<double> diffs;
  diffs.reserve(scores.size());
  for (const auto& s : scores) diffs.push_back(s.diff);
  return percent_positive(diffs);
}

double quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) fail(ErrorCode::EmptySplit, "quantile of an empty list");
  double pos = p * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

FiveNumber five_number(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::EmptySplit, "five-number summary of an empty group");
  std::sort(values.begin(), values.end());
  return {values.front(), quantile(values, 0.25), quantile(values, 0.5),
          quantile(values, 0.75), values.back(), values.size()};
}

std::vector<std::pair<corpus::BasicConcept, FiveNumber>> distribution_summary(
    std::span<const TriadScore> scores) {
  std::vector<std::pair<corpus::BasicConcept, FiveNumber>> out;
  for (auto basic : corpus::all_basic_concepts()) {
    std::vector<double> diffs;
    for (const auto& s : scores) {
      if (s.basic == basic) diffs.push_back(s.diff);
    }
    if (!diffs.empty()) out.emplace_back(basic, five_number(std::move(diffs)));
  }
  return out;
}

}  // namespace sqb::simdiff
