#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace sqb::corpus {

/// The 13 subjective basic concepts. Declaration order is the canonical
/// order used in reports.
enum class BasicConcept {
  Evaluation,
  Importance,
  Feelings,
  CognitiveJudgment,
  CausalRelationship,
  Similarity,
  Preferences,
  Norms,
  Policies,
  Rights,
  ActionTendency,
  Expectation,
  Belief,
};
inline constexpr std::size_t kBasicConceptCount = 13;

enum class Formulation { DR, ImIn, InIn, DeIn, InDe };
inline constexpr std::size_t kFormulationCount = 5;

enum class Role { Reference, Similar, Dissimilar };

enum class LengthBin { B0_10, B10_12, B12_15, B15_25 };

std::string_view to_string(BasicConcept value);
std::string_view to_string(Formulation value);
std::string_view to_string(Role value);
std::string_view to_string(LengthBin value);

// Parsers accept exactly the names produced by to_string and throw
// SchemaError for anything else.
BasicConcept parse_basic(std::string_view name);
Formulation parse_formulation(std::string_view name);
Role parse_role(std::string_view name);
LengthBin parse_length_bin(std::string_view name);

const std::array<BasicConcept, kBasicConceptCount>& all_basic_concepts();
const std::array<Formulation, kFormulationCount>& all_formulations();

struct SurveyQuestion {
  std::string id;
  std::string text;
  BasicConcept basic{};
  std::string concrete_id;
  std::string triad_id;
  Role role{};
  Formulation formulation{};
  std::string template_id;
  std::size_t n_tokens = 0;
  LengthBin length_bin{};
};

/// Categorical fields of a SurveyQuestion that analyses can group by.
enum class Property {
  LengthBin,
  Basic,
  ConcreteId,
  TriadId,
  Role,
  Formulation,
  TemplateId,
  NTokens,
};

std::string_view to_string(Property property);
Property parse_property(std::string_view name);
std::string property_value(const SurveyQuestion& question, Property property);

}  // namespace sqb::corpus
