#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sqb/common/error.hpp"
#include "sqb/corpus/taxonomy.hpp"
#include "sqb/embed/word_vectors.hpp"

namespace sqb::fixtures {

/// Code of the sqb::Error thrown by fn; records a test failure if none is.
template <class Fn>
ErrorCode code_of(Fn&& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "no sqb::Error thrown";
  return ErrorCode::InternalInvariantViolation;
}

/// Fresh empty directory under the system temp dir.
std::filesystem::path fresh_dir(const std::string& name);

std::filesystem::path data_path(const std::string& name);

struct SyntheticSurvey {
  std::filesystem::path responses;
  std::filesystem::path questions;
  std::filesystem::path scales;
  /// JSONL sentence embeddings of the survey questions: (t_q).
  std::filesystem::path embeddings;
  std::size_t n_respondents = 0;
  std::size_t n_questions = 0;
};

/// Raw answer on a 0-10 scale is 5 + 4 s t: s = +1/-1 by the respondent's
/// "group" (A/B), t = +1/-1 per question, half of each. "region" is noise.
/// One answer in every 50 is written as a missing code.
SyntheticSurvey write_synthetic_survey(const std::filesystem::path& dir, std::size_t n_respondents,
                                       std::size_t n_questions, std::uint64_t seed);

/// Uniform(-1,1) vectors for every corpus word, except that the words telling
/// a reference phrase from its similar partner share a per-triad direction
/// (plus small noise).
std::shared_ptr<embed::WordVectorTable> semantic_word_vectors(
    const std::vector<corpus::ConceptTriad>& taxonomy,
    const std::vector<corpus::SurveyQuestion>& questions, std::size_t dim, std::uint64_t seed);

}  // namespace sqb::fixtures
