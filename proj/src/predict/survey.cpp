#include "sqb/predict/survey.hpp"

#include <algorithm>
#include <set>

#include "sqb/common/error.hpp"

namespace sqb::predict {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string format_value(double v) { return csv::format_double(v); }

}  // namespace

std::vector<std::string> SurveyData::question_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : question_texts) ids.push_back(id);
  return ids;
}

SurveyData ingest_survey(const csv::Table& responses, const csv::Table& questions,
                         const csv::Table& scales, const IngestOptions& options) {
  std::map<std::string, ScaleRange, std::less<>> scale_of;
  {
    auto qc = scales.require_column("question_id", "scale table");
    auto lo = scales.require_column("min", "scale table");
    auto hi = scales.require_column("max", "scale table");
    for (std::size_t i = 0; i < scales.rows.size(); ++i) {
      const auto& row = scales.rows[i];
      auto where = "scale table line " + std::to_string(scales.lines[i]);
      ScaleRange r{csv::parse_double(row[lo], where), csv::parse_double(row[hi], where)};
      if (!(r.max > r.min)) fail(ErrorCode::SchemaError, where + ": max must exceed min");
      if (!scale_of.emplace(row[qc], r).second) {
        fail(ErrorCode::SchemaError, where + ": duplicate question '" + row[qc] + "'");
      }
    }
  }
  std::map<std::string, std::string, std::less<>> text_of;
  {
    auto qc = questions.require_column("question_id", "question table");
    auto tc = questions.require_column("text", "question table");
    for (const auto& row : questions.rows) text_of[row[qc]] = row[tc];
  }

  const auto id_col = responses.require_column(options.id_column, "responses");
  std::vector<std::size_t> bg_cols;
  for (const auto& var : options.background) {
    bg_cols.push_back(responses.require_column(var, "responses"));
  }
  std::set<std::size_t> used(bg_cols.begin(), bg_cols.end());
  used.insert(id_col);

  SurveyData data;
  std::vector<std::pair<std::size_t, const ScaleRange*>> q_cols;
  for (std::size_t c = 0; c < responses.header.size(); ++c) {
    if (used.contains(c)) continue;
    const auto& name = responses.header[c];
    auto s = scale_of.find(name);
    auto t = text_of.find(name);
    if (s == scale_of.end() || t == text_of.end()) {
      fail(ErrorCode::SchemaError, "responses column '" + name + "' is not a background variable " +
                                       "and has no " + (s == scale_of.end() ? "scale" : "text") +
                                       " entry");
    }
    q_cols.emplace_back(c, &s->second);
    data.question_texts.emplace(name, t->second);
  }
  if (q_cols.empty()) fail(ErrorCode::SchemaError, "responses file has no question columns");

  std::set<std::string, std::less<>> missing(options.missing_codes.begin(),
                                             options.missing_codes.end());
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < responses.rows.size(); ++i) {
    const auto& row = responses.rows[i];
    auto where = "responses line " + std::to_string(responses.lines[i]);
    Respondent r;
    r.id = trim(row[id_col]);
    if (r.id.empty()) fail(ErrorCode::SchemaError, where + ": empty respondent id");
    if (!seen_ids.insert(r.id).second) {
      fail(ErrorCode::SchemaError, where + ": duplicate respondent '" + r.id + "'");
    }
    for (std::size_t b = 0; b < bg_cols.size(); ++b) {
      auto v = trim(row[bg_cols[b]]);
      if (missing.contains(v)) v = kMissingCategory;
      r.background.emplace_back(options.background[b], std::move(v));
    }
    for (const auto& [c, scale] : q_cols) {
      auto v = trim(row[c]);
      if (missing.contains(v)) {
        ++data.n_missing;
        continue;
      }
      const auto& qid = responses.header[c];
      double raw = csv::parse_double(v, where + ", question '" + qid + "'");
      if (!(raw >= scale->min && raw <= scale->max)) {
        fail(ErrorCode::ScaleViolation, where + ": question '" + qid + "' value " +
                                            format_value(raw) + " outside [" +
                                            format_value(scale->min) + ", " +
                                            format_value(scale->max) + "]");
      }
      data.records.push_back({r.id, qid, (raw - scale->min) / (scale->max - scale->min)});
    }
    data.respondents.push_back(std::move(r));
  }
  return data;
}

SurveyData load_survey(const std::filesystem::path& responses,
                       const std::filesystem::path& questions,
                       const std::filesystem::path& scales, const IngestOptions& options) {
  return ingest_survey(csv::read_file(responses), csv::read_file(questions),
                       csv::read_file(scales), options);
}

}  // namespace sqb::predict
