#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sqb/embed/vector.hpp"

namespace sqb::embed {

/// Bag-of-words feature space. Each fitted text is one document; words are
/// ordered by first occurrence.
class Vocabulary {
 public:
  static Vocabulary fit(std::span<const std::string> texts);
  static Vocabulary fit(std::span<const std::string_view> texts);

  const std::vector<std::string>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  std::size_t n_docs() const { return n_docs_; }
  std::optional<std::size_t> index(std::string_view word) const;
  /// Number of fitted documents containing `word`; 0 when out of vocabulary.
  std::size_t doc_freq(std::string_view word) const;
  std::size_t doc_freq_at(std::size_t index) const { return doc_freq_[index]; }

 private:
  std::vector<std::string> words_;
  std::vector<std::size_t> doc_freq_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t n_docs_ = 0;
};

/// Raw term counts over the vocabulary. Out-of-vocabulary tokens are dropped.
Vector tf_vector(std::string_view text, const Vocabulary& vocab);

/// tf * ln(N / df) per vocabulary word.
Vector tfidf_vector(std::string_view text, const Vocabulary& vocab);

}  // namespace sqb::embed
