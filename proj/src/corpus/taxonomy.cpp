#include "sqb/corpus/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "sqb/common/csv.hpp"
#include "sqb/common/error.hpp"
#include "sqb/common/rng.hpp"
#include "sqb/corpus/tokenize.hpp"

namespace sqb::corpus {
namespace {

std::string where(std::string_view context, std::size_t line) {
  return std::string(context) + ":" + std::to_string(line);
}

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

// Tokens in a fragment, without the non-empty requirement of tokenize().
std::size_t count_tokens(std::string_view fragment) {
  try {
    return tokenize(fragment).size();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyText) return 0;
    throw;
  }
}

void check_frame_slot(std::string_view frame_text, std::string_view context) {
  if (count_occurrences(frame_text, kConceptSlot) != 1) {
    fail(ErrorCode::MalformedTemplate,
         std::string(context) + ": frame must contain exactly one {concept} slot: '" +
             std::string(frame_text) + "'");
  }
}

std::string_view template_slot(std::string_view pattern, std::string_view context) {
  std::size_t asks = count_occurrences(pattern, kAskSlot);
  std::size_t clauses = count_occurrences(pattern, kClauseSlot);
  if (asks + clauses != 1) {
    fail(ErrorCode::MalformedTemplate,
         std::string(context) + ": template must contain exactly one {ask} or {clause} slot: '" +
             std::string(pattern) + "'");
  }
  std::size_t braces = std::count(pattern.begin(), pattern.end(), '{');
  if (braces != 1) {
    fail(ErrorCode::MalformedTemplate,
         std::string(context) + ": unexpected extra slot in '" + std::string(pattern) + "'");
  }
  return asks ? kAskSlot : kClauseSlot;
}

std::vector<ConceptTriad> taxonomy_from_table(const csv::Table& table, std::string_view context) {
  if (table.header.empty()) fail(ErrorCode::SchemaError, std::string(context) + ": empty file");
  const auto c_triad = table.require_column("triad_id", context);
  const auto c_basic = table.require_column("basic", context);
  const auto c_ref_id = table.require_column("reference_id", context);
  const auto c_ref = table.require_column("reference", context);
  const auto c_sim_id = table.require_column("similar_id", context);
  const auto c_sim = table.require_column("similar", context);
  const auto c_dis_id = table.require_column("dissimilar_id", context);
  const auto c_dis = table.require_column("dissimilar", context);

  std::vector<ConceptTriad> triads;
  std::unordered_set<std::string> triad_ids;
  std::unordered_set<std::string> concept_ids;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto loc = where(context, table.lines[r]);
    ConceptTriad triad;
    triad.id = row[c_triad];
    try {
      triad.basic = parse_basic(row[c_basic]);
    } catch (const Error& e) {
      fail(ErrorCode::SchemaError, loc + ": " + e.what());
    }
    triad.reference = {row[c_ref_id], row[c_ref]};
    triad.similar = {row[c_sim_id], row[c_sim]};
    triad.dissimilar = {row[c_dis_id], row[c_dis]};
    if (triad.id.empty()) fail(ErrorCode::SchemaError, loc + ": empty triad_id");
    if (!triad_ids.insert(triad.id).second) {
      fail(ErrorCode::SchemaError, loc + ": duplicate triad_id '" + triad.id + "'");
    }
    for (const auto* concept_ref : {&triad.reference, &triad.similar, &triad.dissimilar}) {
      if (concept_ref->id.empty() || concept_ref->phrase.empty()) {
        fail(ErrorCode::SchemaError, loc + ": empty concept id or phrase");
      }
      if (!concept_ids.insert(concept_ref->id).second) {
        fail(ErrorCode::SchemaError, loc + ": concept id '" + concept_ref->id +
                                         "' appears more than once in the taxonomy");
      }
    }
    triads.push_back(std::move(triad));
  }
  return triads;
}

}  // namespace

const ConcreteConcept& ConceptTriad::at(Role role) const {
  switch (role) {
    case Role::Reference: return reference;
    case Role::Similar: return similar;
    case Role::Dissimilar: return dissimilar;
  }
  fail(ErrorCode::InternalInvariantViolation, "unhandled role");
}

const Frame& TemplateTable::frame_for(BasicConcept basic) const {
  for (const auto& frame : frames) {
    if (frame.basic == basic) return frame;
  }
  fail(ErrorCode::MalformedTemplate,
       "no sentence frame for basic concept '" + std::string(to_string(basic)) + "'");
}

std::vector<ConceptTriad> parse_taxonomy(std::string_view csv_text, std::string_view context) {
  return taxonomy_from_table(csv::parse(csv_text, context), context);
}

std::vector<QuestionTemplate> parse_templates(std::string_view csv_text, std::string_view context) {
  auto table = csv::parse(csv_text, context);
  if (table.header.empty()) fail(ErrorCode::SchemaError, std::string(context) + ": empty file");
  const auto c_id = table.require_column("template_id", context);
  const auto c_form = table.require_column("formulation", context);
  const auto c_pattern = table.require_column("pattern", context);

  std::vector<QuestionTemplate> templates;
  std::unordered_set<std::string> ids;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto loc = where(context, table.lines[r]);
    QuestionTemplate tmpl;
    tmpl.id = row[c_id];
    tmpl.pattern = row[c_pattern];
    try {
      tmpl.formulation = parse_formulation(row[c_form]);
    } catch (const Error& e) {
      fail(ErrorCode::SchemaError, loc + ": " + e.what());
    }
    if (tmpl.id.empty() || tmpl.id.find('@') != std::string::npos) {
      fail(ErrorCode::SchemaError, loc + ": template_id must be non-empty and free of '@'");
    }
    if (!ids.insert(tmpl.id).second) {
      fail(ErrorCode::SchemaError, loc + ": duplicate template_id '" + tmpl.id + "'");
    }
    template_slot(tmpl.pattern, loc);
    templates.push_back(std::move(tmpl));
  }
  return templates;
}

std::vector<Frame> parse_frames(std::string_view csv_text, std::string_view context) {
  auto table = csv::parse(csv_text, context);
  if (table.header.empty()) fail(ErrorCode::SchemaError, std::string(context) + ": empty file");
  const auto c_basic = table.require_column("basic", context);
  const auto c_ask = table.require_column("ask", context);
  const auto c_clause = table.require_column("clause", context);

  std::vector<Frame> frames;
  std::set<BasicConcept> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto loc = where(context, table.lines[r]);
    Frame frame;
    try {
      frame.basic = parse_basic(row[c_basic]);
    } catch (const Error& e) {
      fail(ErrorCode::SchemaError, loc + ": " + e.what());
    }
    frame.ask = row[c_ask];
    frame.clause = row[c_clause];
    check_frame_slot(frame.ask, loc);
    check_frame_slot(frame.clause, loc);
    if (!seen.insert(frame.basic).second) {
      fail(ErrorCode::SchemaError,
           loc + ": duplicate frame for '" + std::string(to_string(frame.basic)) + "'");
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

std::vector<ConceptTriad> load_taxonomy(const std::filesystem::path& path) {
  return parse_taxonomy(csv::read_text(path), path.string());
}

TemplateTable load_template_table(const std::filesystem::path& templates_csv,
                                  const std::filesystem::path& frames_csv) {
  return {parse_templates(csv::read_text(templates_csv), templates_csv.string()),
          parse_frames(csv::read_text(frames_csv), frames_csv.string())};
}

const std::vector<ConceptTriad>& default_taxonomy() {
  static const auto taxonomy = parse_taxonomy(default_taxonomy_csv(), "builtin:taxonomy.csv");
  return taxonomy;
}

const TemplateTable& default_template_table() {
  static const TemplateTable table{
      parse_templates(default_templates_csv(), "builtin:templates.csv"),
      parse_frames(default_frames_csv(), "builtin:frames.csv")};
  return table;
}

RenderedQuestion render_question(const QuestionTemplate& tmpl, const Frame& frame,
                                 std::string_view concept_phrase) {
  const auto slot = template_slot(tmpl.pattern, "template " + tmpl.id);
  const std::string& frame_text = slot == kAskSlot ? frame.ask : frame.clause;
  check_frame_slot(frame_text, "frame for " + std::string(to_string(frame.basic)));

  const auto slot_pos = tmpl.pattern.find(slot);
  const auto concept_pos = frame_text.find(kConceptSlot);

  std::string before = tmpl.pattern.substr(0, slot_pos) + frame_text.substr(0, concept_pos);
  std::string after = frame_text.substr(concept_pos + kConceptSlot.size()) +
                      tmpl.pattern.substr(slot_pos + slot.size());

  RenderedQuestion out;
  out.text = before + std::string(concept_phrase) + after;
  if (!out.text.empty()) {
    out.text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out.text[0])));
  }
  out.concept_begin = count_tokens(before);
  out.concept_end = out.concept_begin + count_tokens(concept_phrase);
  return out;
}

std::vector<SurveyQuestion> generate_corpus(std::span<const ConceptTriad> taxonomy,
                                            const TemplateTable& templates,
                                            std::uint64_t seed) {
  if (templates.templates.empty()) {
    fail(ErrorCode::MalformedTemplate, "template table is empty");
  }
  std::vector<SurveyQuestion> questions;
  std::unordered_set<std::string> texts;
  std::unordered_set<std::string> ids;
  for (const auto& triad : taxonomy) {
    const Frame& frame = templates.frame_for(triad.basic);
    for (Role role : {Role::Reference, Role::Similar, Role::Dissimilar}) {
      const auto& concept_ref = triad.at(role);
      for (const auto& tmpl : templates.templates) {
        SurveyQuestion q;
        q.text = render_question(tmpl, frame, concept_ref.phrase).text;
        q.id = concept_ref.id + "@" + tmpl.id;
        q.basic = triad.basic;
        q.concrete_id = concept_ref.id;
        q.triad_id = triad.id;
        q.role = role;
        q.formulation = tmpl.formulation;
        q.template_id = tmpl.id;
        q.n_tokens = tokenize(q.text).size();
        q.length_bin = length_bin(q.n_tokens);
        if (!texts.insert(q.text).second) {
          fail(ErrorCode::DuplicateQuestion, "generated text repeats: '" + q.text + "'");
        }
        if (!ids.insert(q.id).second) {
          fail(ErrorCode::DuplicateQuestion, "generated id repeats: '" + q.id + "'");
        }
        questions.push_back(std::move(q));
      }
    }
  }
  Rng rng(substream(seed, "corpus.order"));
  rng.shuffle(std::span(questions));
  return questions;
}

}  // namespace sqb::corpus
