#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqb/embed/source.hpp"
#include "sqb/predict/survey.hpp"

namespace sqb::predict {

/// One-hot layout of the background variables. Categories are sorted per
/// variable and taken from the full respondent table.
class BackgroundEncoding {
 public:
  BackgroundEncoding() = default;
  explicit BackgroundEncoding(std::span<const Respondent> respondents);

  std::size_t width() const { return width_; }
  /// Column names as "variable=category".
  const std::vector<std::string>& columns() const { return columns_; }
  /// One-hot row of a respondent. Throws SchemaError for an unknown id.
  const Eigen::RowVectorXd& row(std::string_view respondent_id) const;

 private:
  std::size_t width_ = 0;
  std::vector<std::string> columns_;
  std::map<std::string, Eigen::RowVectorXd, std::less<>> rows_;
};

struct Design {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<std::string> question_ids;
  std::vector<std::string> respondent_ids;
};

/// Background one-hot block followed by the question representation.
/// `question_texts` maps ids to texts for the encoder.
Design build_design(std::span<const ResponseRecord> records, const BackgroundEncoding& background,
                    const embed::Encoder& encoder,
                    const std::map<std::string, std::string, std::less<>>& question_texts);

}  // namespace sqb::predict
