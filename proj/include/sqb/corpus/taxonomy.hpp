#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqb/corpus/types.hpp"

namespace sqb::corpus {

struct ConcreteConcept {
  std::string id;
  std::string phrase;
};

/// A reference concrete concept with one conceptually similar and one
/// dissimilar partner, all under the same basic concept.
struct ConceptTriad {
  std::string id;
  BasicConcept basic{};
  ConcreteConcept reference;
  ConcreteConcept similar;
  ConcreteConcept dissimilar;

  const ConcreteConcept& at(Role role) const;
};

/// Sentence frames for one basic concept. `ask` is the bare direct question
/// and `clause` the declarative form embedded by indirect formulations; both
/// hold exactly one `{concept}` slot.
struct Frame {
  BasicConcept basic{};
  std::string ask;
  std::string clause;
};

/// A formulation pattern holding exactly one of the `{ask}` or `{clause}`
/// slots, which resolve through the basic concept's frame to the
/// concrete-concept phrase.
struct QuestionTemplate {
  std::string id;
  Formulation formulation{};
  std::string pattern;
};

struct TemplateTable {
  std::vector<QuestionTemplate> templates;
  std::vector<Frame> frames;

  const Frame& frame_for(BasicConcept basic) const;
};

inline constexpr std::string_view kConceptSlot = "{concept}";
inline constexpr std::string_view kAskSlot = "{ask}";
inline constexpr std::string_view kClauseSlot = "{clause}";

// Parsing validates shape (slots, closed vocabularies, unique ids) and
// reports the offending CSV line.
std::vector<ConceptTriad> parse_taxonomy(std::string_view csv_text, std::string_view context);
std::vector<QuestionTemplate> parse_templates(std::string_view csv_text, std::string_view context);
std::vector<Frame> parse_frames(std::string_view csv_text, std::string_view context);

std::vector<ConceptTriad> load_taxonomy(const std::filesystem::path& path);
TemplateTable load_template_table(const std::filesystem::path& templates_csv,
                                  const std::filesystem::path& frames_csv);

/// Tables compiled in from data/*.csv.
const std::vector<ConceptTriad>& default_taxonomy();
const TemplateTable& default_template_table();

std::string_view default_taxonomy_csv();
std::string_view default_templates_csv();
std::string_view default_frames_csv();

struct RenderedQuestion {
  std::string text;
  // Token span [begin, end) occupied by the concrete-concept phrase.
  std::size_t concept_begin = 0;
  std::size_t concept_end = 0;
};

RenderedQuestion render_question(const QuestionTemplate& tmpl, const Frame& frame,
                                 std::string_view concept_phrase);

/// One question per (concrete concept x template). Ids are
/// `<concrete_id>@<template_id>`; the row order is a seeded shuffle.
std::vector<SurveyQuestion> generate_corpus(std::span<const ConceptTriad> taxonomy,
                                            const TemplateTable& templates,
                                            std::uint64_t seed);

}  // namespace sqb::corpus
