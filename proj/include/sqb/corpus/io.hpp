#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqb/corpus/types.hpp"

namespace sqb::corpus {

/// Columns: id,text,basic,concrete_id,triad_id,role,formulation,template_id,
/// n_tokens,length_bin. The last two are informational; readers recompute
/// them from the text.
std::string corpus_to_csv(std::span<const SurveyQuestion> questions);

/// Validates closed vocabularies and id uniqueness. Extra columns are
/// ignored; n_tokens and length_bin are always recomputed.
std::vector<SurveyQuestion> parse_corpus(std::string_view csv_text, std::string_view context);
std::vector<SurveyQuestion> load_corpus(const std::filesystem::path& path);

/// Rows of (category, value, count) for basic, formulation, role, length_bin
/// plus the distinct triad and concrete-concept counts.
std::string corpus_summary_csv(std::span<const SurveyQuestion> questions);

}  // namespace sqb::corpus
