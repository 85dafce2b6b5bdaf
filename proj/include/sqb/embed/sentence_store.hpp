#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sqb/embed/vector.hpp"

namespace sqb::embed {

/// Precomputed sentence embeddings for one model, keyed by question id.
struct SentenceEmbeddingStore {
  std::string model_name;
  std::size_t dim = 0;
  std::unordered_map<std::string, Vector> entries;
  /// Contents of an optional `{"meta": {...}}` line (pooling notes, model
  /// revision). Null when the file has none.
  nlohmann::json meta;

  const Vector* find(std::string_view id) const;
};

/// One JSON object per line: {"id", "model", "dim", "vector"}. Model and dim
/// must be constant; repeated ids raise DuplicateId. A line holding only a
/// "meta" object is recorded in `meta`; blank lines are skipped.
SentenceEmbeddingStore read_sentence_embeddings(std::istream& in, std::string_view context);
SentenceEmbeddingStore load_sentence_embeddings(const std::filesystem::path& path);

/// Serializes in the same format, ids sorted.
std::string sentence_embeddings_to_jsonl(const SentenceEmbeddingStore& store);

}  // namespace sqb::embed
