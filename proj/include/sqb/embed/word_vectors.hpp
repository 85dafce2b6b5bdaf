#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "sqb/embed/vector.hpp"
#include "sqb/embed/vocabulary.hpp"

namespace sqb::embed {

/// Word -> vector lookup with a fixed dimension. Words are lowercased.
class WordVectorTable {
 public:
  explicit WordVectorTable(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  /// Lines whose (lowercased) word was already present; first one wins.
  std::size_t duplicate_count() const { return duplicates_; }

  const Vector* find(std::string_view word) const;
  /// Inserts unless the word exists. Returns false on a duplicate.
  bool insert(std::string word, Vector values);
  const std::unordered_map<std::string, Vector>& entries() const { return entries_; }

 private:
  std::size_t dim_;
  std::unordered_map<std::string, Vector> entries_;
  std::size_t duplicates_ = 0;
};

/// Reads GloVe-style text: `word v1 ... vd` per line, d constant across
/// lines. A leading fastText `.vec` header (`<count> <dim>`) is skipped.
/// When `keep` is given, only those words are stored; other lines are still
/// checked for field count but their numbers are not parsed.
WordVectorTable read_word_vectors(std::istream& in, std::string_view context,
                                  const std::unordered_set<std::string>* keep = nullptr);
WordVectorTable load_word_vectors(const std::filesystem::path& path,
                                  const std::unordered_set<std::string>* keep = nullptr);

/// Serializes in the text format above, words sorted, no header line.
std::string word_vectors_to_text(const WordVectorTable& table);

/// Element-wise mean over the in-vocabulary tokens of `text`, counting
/// repeated tokens per occurrence. Throws AllOOV when no token is known.
Vector mean_pool(std::string_view text, const WordVectorTable& table);

/// One Uniform(-1, 1) vector per vocabulary word, drawn in lexicographic
/// word order from a generator seeded with `seed`.
WordVectorTable random_embedding_table(const Vocabulary& vocab, std::size_t dim,
                                       std::uint64_t seed);

}  // namespace sqb::embed
