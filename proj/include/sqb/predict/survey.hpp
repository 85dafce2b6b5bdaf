#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sqb/common/csv.hpp"

namespace sqb::predict {

inline constexpr std::string_view kMissingCategory = "missing";

struct Respondent {
  std::string id;
  /// Background variable -> category, in the configured variable order.
  std::vector<std::pair<std::string, std::string>> background;
};

struct ResponseRecord {
  std::string respondent_id;
  std::string question_id;
  double response = 0.0;
};

struct ScaleRange {
  double min = 0.0;
  double max = 1.0;
};

struct IngestOptions {
  std::string id_column = "idno";
  std::vector<std::string> background = {
      "region",       "gender",   "education",  "household_income", "religion",
      "citizenship",  "birthplace", "language", "minority_status",  "marital_past",
      "marital_status"};
  /// Cell values treated as non-response; compared after trimming spaces.
  std::vector<std::string> missing_codes = {"", "NA", "77", "88", "99", "777", "888", "999"};
};

struct SurveyData {
  std::vector<Respondent> respondents;
  std::vector<ResponseRecord> records;
  /// Question id -> text, for every question column in the responses file.
  std::map<std::string, std::string, std::less<>> question_texts;
  std::size_t n_missing = 0;

  std::vector<std::string> question_ids() const;
};

/// Long-format records from a wide responses table. Responses are rescaled
/// to (raw - min) / (max - min); missing codes are dropped.
SurveyData ingest_survey(const csv::Table& responses, const csv::Table& questions,
                         const csv::Table& scales, const IngestOptions& options = {});

SurveyData load_survey(const std::filesystem::path& responses,
                       const std::filesystem::path& questions,
                       const std::filesystem::path& scales, const IngestOptions& options = {});

}  // namespace sqb::predict
