#include "sqb/corpus/io.hpp"

#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sqb/common/csv.hpp"
#include "sqb/common/error.hpp"
#include "sqb/corpus/tokenize.hpp"

namespace sqb::corpus {

std::string corpus_to_csv(std::span<const SurveyQuestion> questions) {
  std::ostringstream out;
  csv::write_row(out, {"id", "text", "basic", "concrete_id", "triad_id", "role", "formulation",
                       "template_id", "n_tokens", "length_bin"});
  for (const auto& q : questions) {
    csv::write_row(out, {q.id, q.text, std::string(to_string(q.basic)), q.concrete_id,
                         q.triad_id, std::string(to_string(q.role)),
                         std::string(to_string(q.formulation)), q.template_id,
                         std::to_string(q.n_tokens), std::string(to_string(q.length_bin))});
  }
  return out.str();
}

std::vector<SurveyQuestion> parse_corpus(std::string_view csv_text, std::string_view context) {
  auto table = csv::parse(csv_text, context);
  if (table.header.empty() || table.rows.empty()) {
    fail(ErrorCode::SchemaError, std::string(context) + ": corpus file has no questions");
  }
  const auto c_id = table.require_column("id", context);
  const auto c_text = table.require_column("text", context);
  const auto c_basic = table.require_column("basic", context);
  const auto c_concrete = table.require_column("concrete_id", context);
  const auto c_triad = table.require_column("triad_id", context);
  const auto c_role = table.require_column("role", context);
  const auto c_form = table.require_column("formulation", context);
  const auto c_tmpl = table.require_column("template_id", context);

  std::vector<SurveyQuestion> questions;
  std::unordered_set<std::string> ids;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string loc = std::string(context) + ":" + std::to_string(table.lines[r]);
    SurveyQuestion q;
    q.id = row[c_id];
    q.text = row[c_text];
    q.concrete_id = row[c_concrete];
    q.triad_id = row[c_triad];
    q.template_id = row[c_tmpl];
    try {
      q.basic = parse_basic(row[c_basic]);
      q.role = parse_role(row[c_role]);
      q.formulation = parse_formulation(row[c_form]);
      q.n_tokens = tokenize(q.text).size();
      q.length_bin = length_bin(q.n_tokens);
    } catch (const Error& e) {
      fail(e.code(), loc + ": " + e.what());
    }
    if (q.id.empty()) fail(ErrorCode::SchemaError, loc + ": empty id");
    if (!ids.insert(q.id).second) {
      fail(ErrorCode::DuplicateQuestion, loc + ": duplicate id '" + q.id + "'");
    }
    questions.push_back(std::move(q));
  }
  return questions;
}

std::vector<SurveyQuestion> load_corpus(const std::filesystem::path& path) {
  return parse_corpus(csv::read_text(path), path.string());
}

std::string corpus_summary_csv(std::span<const SurveyQuestion> questions) {
  std::map<std::string, std::size_t> by_basic, by_form, by_role, by_bin;
  std::set<std::string> triads, concretes;
  for (const auto& q : questions) {
    ++by_basic[std::string(to_string(q.basic))];
    ++by_form[std::string(to_string(q.formulation))];
    ++by_role[std::string(to_string(q.role))];
    ++by_bin[std::string(to_string(q.length_bin))];
    triads.insert(q.triad_id);
    concretes.insert(q.concrete_id);
  }
  std::ostringstream out;
  csv::write_row(out, {"category", "value", "count"});
  csv::write_row(out, {"total", "questions", std::to_string(questions.size())});
  csv::write_row(out, {"total", "basic_concepts", std::to_string(by_basic.size())});
  csv::write_row(out, {"total", "triads", std::to_string(triads.size())});
  csv::write_row(out, {"total", "concrete_concepts", std::to_string(concretes.size())});
  csv::write_row(out, {"total", "formulations", std::to_string(by_form.size())});
  auto emit = [&](std::string_view category, const std::map<std::string, std::size_t>& counts) {
    for (const auto& [value, count] : counts) {
      csv::write_row(out, {std::string(category), value, std::to_string(count)});
    }
  };
  emit("basic", by_basic);
  emit("formulation", by_form);
  emit("role", by_role);
  emit("length_bin", by_bin);
  return out.str();
}

}  // namespace sqb::corpus
