#include "sqb/corpus/chi_square.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "sqb/common/error.hpp"
#include "sqb/common/special.hpp"

namespace sqb::corpus {

ChiSquareResult chi_square_from_table(const std::vector<std::vector<double>>& counts) {
  const std::size_t rows = counts.size();
  const std::size_t cols = rows ? counts.front().size() : 0;
  if (rows < 2 || cols < 2) {
    fail(ErrorCode::DegenerateTable, "contingency table needs at least 2 rows and 2 columns");
  }
  std::vector<double> row_tot(rows, 0.0), col_tot(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (counts[i].size() != cols) fail(ErrorCode::BadInput, "ragged contingency table");
    for (std::size_t j = 0; j < cols; ++j) {
      double o = counts[i][j];
      if (!(o >= 0.0)) fail(ErrorCode::BadInput, "negative or non-finite count");
      row_tot[i] += o;
      col_tot[j] += o;
      total += o;
    }
  }
  for (double t : row_tot)
    if (t <= 0.0) fail(ErrorCode::DegenerateTable, "empty row in contingency table");
  for (double t : col_tot)
    if (t <= 0.0) fail(ErrorCode::DegenerateTable, "empty column in contingency table");

  // Terms are summed in sorted order so that transposing the table yields
  // the identical floating-point statistic.
  std::vector<double> terms;
  terms.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double expected = row_tot[i] * col_tot[j] / total;
      double diff = counts[i][j] - expected;
      terms.push_back(diff * diff / expected);
    }
  }
  std::sort(terms.begin(), terms.end());
  double statistic = 0.0;
  for (double t : terms) statistic += t;

  ChiSquareResult result;
  result.statistic = statistic;
  result.df = static_cast<int>((rows - 1) * (cols - 1));
  result.p_value = chi_square_sf(statistic, result.df);
  return result;
}

ChiSquareResult chi_square_independence(std::span<const SurveyQuestion> questions, Property a,
                                        Property b) {
  std::map<std::string, std::size_t> a_levels, b_levels;
  for (const auto& q : questions) {
    a_levels.emplace(property_value(q, a), 0);
    b_levels.emplace(property_value(q, b), 0);
  }
  auto check = [](const auto& levels, Property p) {
    if (levels.size() < 2) {
      fail(ErrorCode::DegenerateTable, "property '" + std::string(to_string(p)) +
                                           "' has fewer than two categories");
    }
  };
  check(a_levels, a);
  check(b_levels, b);
  std::size_t idx = 0;
  for (auto& [_, i] : a_levels) i = idx++;
  idx = 0;
  for (auto& [_, i] : b_levels) i = idx++;

  std::vector<std::vector<double>> table(a_levels.size(), std::vector<double>(b_levels.size()));
  for (const auto& q : questions) {
    table[a_levels.at(property_value(q, a))][b_levels.at(property_value(q, b))] += 1.0;
  }
  return chi_square_from_table(table);
}

}  // namespace sqb::corpus
