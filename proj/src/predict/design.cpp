#include "sqb/predict/design.hpp"

#include <set>

#include "sqb/common/error.hpp"

namespace sqb::predict {

BackgroundEncoding::BackgroundEncoding(std::span<const Respondent> respondents) {
  if (respondents.empty()) return;
  const std::size_t n_vars = respondents.front().background.size();
  std::vector<std::map<std::string, std::size_t>> offset(n_vars);
  for (std::size_t v = 0; v < n_vars; ++v) {
    std::set<std::string> cats;
    for (const auto& r : respondents) {
      if (r.background.size() != n_vars) {
        fail(ErrorCode::SchemaError, "respondent '" + r.id + "' has a different background layout");
      }
      cats.insert(r.background[v].second);
    }
    for (const auto& c : cats) {
      offset[v].emplace(c, width_++);
      columns_.push_back(respondents.front().background[v].first + "=" + c);
    }
  }
  for (const auto& r : respondents) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(width_));
    for (std::size_t v = 0; v < n_vars; ++v) {
      row[static_cast<Eigen::Index>(offset[v].at(r.background[v].second))] = 1.0;
    }
    rows_.emplace(r.id, std::move(row));
  }
}

const Eigen::RowVectorXd& BackgroundEncoding::row(std::string_view respondent_id) const {
  auto it = rows_.find(respondent_id);
  if (it == rows_.end()) {
    fail(ErrorCode::SchemaError, "unknown respondent '" + std::string(respondent_id) + "'");
  }
  return it->second;
}

Design build_design(std::span<const ResponseRecord> records, const BackgroundEncoding& background,
                    const embed::Encoder& encoder,
                    const std::map<std::string, std::string, std::less<>>& question_texts) {
  std::map<std::string_view, embed::Vector> cache;
  for (const auto& rec : records) {
    if (cache.contains(rec.question_id)) continue;
    auto t = question_texts.find(rec.question_id);
    if (t == question_texts.end()) {
      fail(ErrorCode::SchemaError, "no text for question '" + rec.question_id + "'");
    }
    cache.emplace(rec.question_id, encoder.encode({rec.question_id, t->second}));
  }
  const auto bw = static_cast<Eigen::Index>(background.width());
  const auto dim = static_cast<Eigen::Index>(encoder.dim());
  Design d;
  d.X.resize(static_cast<Eigen::Index>(records.size()), bw + dim);
  d.y.resize(static_cast<Eigen::Index>(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const auto r = static_cast<Eigen::Index>(i);
    d.X.row(r).head(bw) = background.row(rec.respondent_id);
    const auto& v = cache.at(rec.question_id);
    d.X.row(r).tail(dim) = Eigen::Map<const Eigen::RowVectorXd>(v.data(), dim);
    d.y[r] = rec.response;
    d.question_ids.push_back(rec.question_id);
    d.respondent_ids.push_back(rec.respondent_id);
  }
  return d;
}

}  // namespace sqb::predict
