#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sqb/common/error.hpp"
#include "sqb/corpus/types.hpp"
#include "sqb/report/config.hpp"

namespace sqb::report {

inline constexpr std::string_view kVersion = "0.1.0";

/// Generated or loaded per the corpus section.
std::vector<corpus::SurveyQuestion> build_corpus(const RunConfig& config);

/// Manifest sources for the corpus analyses (`survey` = false) or for the
/// survey questions of the predictive analysis. Word-vector files are read
/// once and filtered to the tokens of `texts`. Sentence-embedding entries
/// without a file for the requested side are left out and named in `skipped`.
std::vector<embed::SourcePtr> build_sources(const RunConfig& config,
                                            const std::vector<std::string>& texts, bool survey,
                                            std::vector<std::string>* skipped = nullptr);

/// Validates, runs, and writes the command's files into config.out_dir,
/// plus run_metadata.json. Progress goes to `log`. Returns the list of
/// files written, relative to out_dir.
std::vector<std::string> run_command(Command command, const RunConfig& config, std::ostream& log);

/// 2 for ConfigError, 4 for InfeasibleSplit, 3 otherwise.
int exit_code(ErrorCode code);

}  // namespace sqb::report
