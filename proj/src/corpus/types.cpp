#include "sqb/corpus/types.hpp"

#include <string>

#include "sqb/common/error.hpp"

namespace sqb::corpus {
namespace {

constexpr std::array<std::string_view, kBasicConceptCount> kBasicNames = {
    "evaluation", "importance",  "feelings", "cognitive_judgment", "causal_relationship",
    "similarity", "preferences", "norms",    "policies",           "rights",
    "action_tendency", "expectation", "belief"};

constexpr std::array<std::string_view, kFormulationCount> kFormulationNames = {
    "DR", "ImIn", "InIn", "DeIn", "InDe"};

constexpr std::array<std::string_view, 3> kRoleNames = {"reference", "similar", "dissimilar"};

constexpr std::array<std::string_view, 4> kBinNames = {"B0_10", "B10_12", "B12_15", "B15_25"};

constexpr std::array<std::string_view, 8> kPropertyNames = {
    "length_bin", "basic", "concrete_id", "triad_id", "role", "formulation", "template_id",
    "n_tokens"};

template <typename Enum, std::size_t N>
Enum parse_name(const std::array<std::string_view, N>& names, std::string_view name,
                std::string_view what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  fail(ErrorCode::SchemaError, "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

std::string_view to_string(BasicConcept value) { return kBasicNames[static_cast<std::size_t>(value)]; }
std::string_view to_string(Formulation value) {
  return kFormulationNames[static_cast<std::size_t>(value)];
}
std::string_view to_string(Role value) { return kRoleNames[static_cast<std::size_t>(value)]; }
std::string_view to_string(LengthBin value) { return kBinNames[static_cast<std::size_t>(value)]; }
std::string_view to_string(Property value) {
  return kPropertyNames[static_cast<std::size_t>(value)];
}

BasicConcept parse_basic(std::string_view name) {
  return parse_name<BasicConcept>(kBasicNames, name, "basic concept");
}
Formulation parse_formulation(std::string_view name) {
  return parse_name<Formulation>(kFormulationNames, name, "formulation");
}
Role parse_role(std::string_view name) { return parse_name<Role>(kRoleNames, name, "role"); }
LengthBin parse_length_bin(std::string_view name) {
  return parse_name<LengthBin>(kBinNames, name, "length bin");
}
Property parse_property(std::string_view name) {
  return parse_name<Property>(kPropertyNames, name, "property");
}

const std::array<BasicConcept, kBasicConceptCount>& all_basic_concepts() {
  static const auto values = [] {
    std::array<BasicConcept, kBasicConceptCount> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<BasicConcept>(i);
    return out;
  }();
  return values;
}

const std::array<Formulation, kFormulationCount>& all_formulations() {
  static const auto values = [] {
    std::array<Formulation, kFormulationCount> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Formulation>(i);
    return out;
  }();
  return values;
}

std::string property_value(const SurveyQuestion& q, Property property) {
  switch (property) {
    case Property::LengthBin: return std::string(to_string(q.length_bin));
    case Property::Basic: return std::string(to_string(q.basic));
    case Property::ConcreteId: return q.concrete_id;
    case Property::TriadId: return q.triad_id;
    case Property::Role: return std::string(to_string(q.role));
    case Property::Formulation: return std::string(to_string(q.formulation));
    case Property::TemplateId: return q.template_id;
    case Property::NTokens: return std::to_string(q.n_tokens);
  }
  fail(ErrorCode::InternalInvariantViolation, "unhandled property");
}

}  // namespace sqb::corpus
