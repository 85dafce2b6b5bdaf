#include "sqb/embed/vocabulary.hpp"

#include <cmath>
#include <unordered_set>

#include "sqb/common/error.hpp"
#include "sqb/corpus/tokenize.hpp"

namespace sqb::embed {

Vocabulary Vocabulary::fit(std::span<const std::string> texts) {
  std::vector<std::string_view> views(texts.begin(), texts.end());
  return fit(std::span<const std::string_view>(views));
}

Vocabulary Vocabulary::fit(std::span<const std::string_view> texts) {
  Vocabulary vocab;
  for (const auto& text : texts) {
    auto tokens = corpus::tokenize(text);
    std::unordered_set<std::string> seen_here;
    for (auto& token : tokens) {
      auto [it, inserted] = vocab.index_.try_emplace(token, vocab.words_.size());
      if (inserted) {
        vocab.words_.push_back(token);
        vocab.doc_freq_.push_back(0);
      }
      if (seen_here.insert(token).second) ++vocab.doc_freq_[it->second];
    }
    ++vocab.n_docs_;
  }
  return vocab;
}

std::optional<std::size_t> Vocabulary::index(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::doc_freq(std::string_view word) const {
  auto idx = index(word);
  return idx ? doc_freq_[*idx] : 0;
}

Vector tf_vector(std::string_view text, const Vocabulary& vocab) {
  Vector out(vocab.size(), 0.0);
  for (const auto& token : corpus::tokenize(text)) {
    if (auto idx = vocab.index(token)) out[*idx] += 1.0;
  }
  return out;
}

Vector tfidf_vector(std::string_view text, const Vocabulary& vocab) {
  Vector out = tf_vector(text, vocab);
  const double n = static_cast<double>(vocab.n_docs());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == 0.0) continue;
    const auto df = vocab.doc_freq_at(i);
    if (df == 0 || df > vocab.n_docs()) {
      fail(ErrorCode::InternalInvariantViolation,
           "document frequency out of range for '" + vocab.words()[i] + "'");
    }
    out[i] *= std::log(n / static_cast<double>(df));
  }
  return out;
}

}  // namespace sqb::embed
