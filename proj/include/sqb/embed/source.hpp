#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "sqb/embed/sentence_store.hpp"
#include "sqb/embed/vector.hpp"
#include "sqb/embed/word_vectors.hpp"

namespace sqb::embed {

/// What an encoder needs to know about a question.
struct TextItem {
  std::string_view id;
  std::string_view text;
};

/// A representation after fitting: maps questions to fixed-dimension vectors.
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual std::size_t dim() const = 0;
  virtual Vector encode(const TextItem& item) const = 0;
};

enum class SourceKind { Tf, TfIdf, Random, WordVectors, Precomputed };

std::string_view to_string(SourceKind kind);

/// A named text representation. Bag-of-words kinds (TF, TF-IDF, random)
/// build their vocabulary from the items passed to fit(); pretrained kinds
/// ignore them.
class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual const std::string& name() const = 0;
  virtual SourceKind kind() const = 0;
  virtual std::shared_ptr<const Encoder> fit(std::span<const TextItem> fit_on) const = 0;

  bool uses_fitted_vocabulary() const {
    return kind() == SourceKind::Tf || kind() == SourceKind::TfIdf ||
           kind() == SourceKind::Random;
  }
};

using SourcePtr = std::shared_ptr<const EmbeddingSource>;

SourcePtr make_tf_source(std::string name);
SourcePtr make_tfidf_source(std::string name);
SourcePtr make_random_source(std::string name, std::size_t dim, std::uint64_t seed);
SourcePtr make_word_vector_source(std::string name,
                                  std::shared_ptr<const WordVectorTable> table);
SourcePtr make_precomputed_source(std::string name,
                                  std::shared_ptr<const SentenceEmbeddingStore> store);

}  // namespace sqb::embed

namespace sqb::embed {

/// Seed of the random word table for a given dimension. Random sources in a
/// manifest and the injected random baselines share it, so a random source
/// compared against its own baseline yields a zero difference.
std::uint64_t random_table_seed(std::uint64_t root_seed, std::size_t dim);

}  // namespace sqb::embed
