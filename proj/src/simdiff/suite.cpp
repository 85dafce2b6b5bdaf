#include "sqb/simdiff/suite.hpp"

#include <map>
#include <sstream>

#include "sqb/common/csv.hpp"

namespace sqb::simdiff {

namespace {

std::string_view pairing(Hypothesis h) {
  return h == Hypothesis::H1 ? "same_template" : "all_ordered_template_pairs";
}

}  // namespace

std::vector<ScoreSet> run_simdiff_suite(std::span<const corpus::SurveyQuestion> questions,
                                        std::span<const embed::SourcePtr> sources,
                                        const SimdiffOptions& options) {
  std::vector<ScoreSet> sets;
  if (options.include_jaccard) {
    for (auto h : options.hypotheses) {
      sets.push_back({"jaccard", h, "none", jaccard_baseline(questions, h)});
    }
  }
  std::vector<embed::TextItem> items;
  items.reserve(questions.size());
  for (const auto& q : questions) items.push_back({q.id, q.text});
  for (const auto& source : sources) {
    auto encoder = source->fit(items);
    std::map<std::string, embed::Vector, std::less<>> vectors;
    for (const auto& item : items) vectors.emplace(std::string(item.id), encoder->encode(item));
    auto sim = cosine_similarity(vectors);
    std::string scope = source->uses_fitted_vocabulary() ? "full_corpus" : "pretrained";
    for (auto h : options.hypotheses) {
      sets.push_back({source->name(), h, scope, scores(questions, h, sim)});
    }
  }
  return sets;
}

std::string scores_csv(std::span<const ScoreSet> sets) {
  std::ostringstream out;
  csv::write_row(out, {"representation", "hypothesis", "basic", "triad_id", "template",
                       "template_cmp", "cos_near", "cos_far", "diff"});
  for (const auto& set : sets) {
    for (const auto& s : set.scores) {
      csv::write_row(out, {set.representation, std::string(to_string(s.hypothesis)),
                           std::string(corpus::to_string(s.basic)), s.triad_id, s.template_id,
                           s.template_cmp, csv::format_double(s.cos_near),
                           csv::format_double(s.cos_far), csv::format_double(s.diff)});
    }
  }
  return out.str();
}

std::string percent_positive_csv(std::span<const ScoreSet> sets) {
  std::ostringstream out;
  csv::write_row(out, {"representation", "hypothesis", "basic", "n", "percent_positive",
                       "vocab_scope", "pairing"});
  for (const auto& set : sets) {
    auto row = [&](std::string basic, std::span<const TriadScore> scores) {
      csv::write_row(out, {set.representation, std::string(to_string(set.hypothesis)),
                           std::move(basic), std::to_string(scores.size()),
                           csv::format_double(percent_positive(scores)), set.vocab_scope,
                           std::string(pairing(set.hypothesis))});
    };
    if (set.scores.empty()) continue;
    row("all", set.scores);
    for (auto basic : corpus::all_basic_concepts()) {
      std::vector<TriadScore> group;
      for (const auto& s : set.scores) {
        if (s.basic == basic) group.push_back(s);
      }
      if (!group.empty()) row(std::string(corpus::to_string(basic)), group);
    }
  }
  return out.str();
}

std::string distribution_csv(std::span<const ScoreSet> sets) {
  std::ostringstream out;
  csv::write_row(out, {"representation", "hypothesis", "basic", "n", "min", "q1", "median",
                       "q3", "max"});
  for (const auto& set : sets) {
    for (const auto& [basic, f] : distribution_summary(set.scores)) {
      csv::write_row(out, {set.representation, std::string(to_string(set.hypothesis)),
                           std::string(corpus::to_string(basic)), std::to_string(f.n),
                           csv::format_double(f.min), csv::format_double(f.q1),
                           csv::format_double(f.median), csv::format_double(f.q3),
                           csv::format_double(f.max)});
    }
  }
  return out.str();
}

}  // namespace sqb::simdiff
