#pragma once

#include <span>
#include <vector>

#include "sqb/corpus/types.hpp"

namespace sqb::corpus {

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

/// Pearson chi-square test of independence on an r x c table of counts.
/// Every row and column total must be positive and both dimensions >= 2,
/// otherwise DegenerateTable.
ChiSquareResult chi_square_from_table(const std::vector<std::vector<double>>& counts);

/// Cross-tabulates two categorical properties over the observed categories.
/// Symmetric in (a, b) bit-for-bit.
ChiSquareResult chi_square_independence(std::span<const SurveyQuestion> questions, Property a,
                                        Property b);

}  // namespace sqb::corpus
