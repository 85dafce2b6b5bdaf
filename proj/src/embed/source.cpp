#include "sqb/embed/source.hpp"

#include <vector>

#include "sqb/common/error.hpp"
#include "sqb/common/rng.hpp"
#include "sqb/embed/vocabulary.hpp"

namespace sqb::embed {
namespace {

Vocabulary fit_vocabulary(std::span<const TextItem> items) {
  if (items.empty()) fail(ErrorCode::EmptySplit, "cannot fit a vocabulary on zero questions");
  std::vector<std::string_view> texts;
  texts.reserve(items.size());
  for (const auto& item : items) texts.push_back(item.text);
  return Vocabulary::fit(texts);
}

class BagOfWordsEncoder final : public Encoder {
 public:
  BagOfWordsEncoder(Vocabulary vocab, bool idf) : vocab_(std::move(vocab)), idf_(idf) {}
  std::size_t dim() const override { return vocab_.size(); }
  Vector encode(const TextItem& item) const override {
    return idf_ ? tfidf_vector(item.text, vocab_) : tf_vector(item.text, vocab_);
  }

 private:
  Vocabulary vocab_;
  bool idf_;
};

class PooledEncoder final : public Encoder {
 public:
  explicit PooledEncoder(std::shared_ptr<const WordVectorTable> table) : table_(std::move(table)) {}
  std::size_t dim() const override { return table_->dim(); }
  Vector encode(const TextItem& item) const override {
    try {
      return mean_pool(item.text, *table_);
    } catch (const Error& e) {
      fail(e.code(), "question '" + std::string(item.id) + "': " + e.what());
    }
  }

 private:
  std::shared_ptr<const WordVectorTable> table_;
};

class LookupEncoder final : public Encoder {
 public:
  LookupEncoder(std::string source, std::shared_ptr<const SentenceEmbeddingStore> store)
      : source_(std::move(source)), store_(std::move(store)) {}
  std::size_t dim() const override { return store_->dim; }
  Vector encode(const TextItem& item) const override {
    if (const Vector* v = store_->find(item.id)) return *v;
    fail(ErrorCode::MissingEmbedding,
         "no embedding for question '" + std::string(item.id) + "' in source '" + source_ + "'");
  }

 private:
  std::string source_;
  std::shared_ptr<const SentenceEmbeddingStore> store_;
};

class NamedSource : public EmbeddingSource {
 public:
  NamedSource(std::string name, SourceKind kind) : name_(std::move(name)), kind_(kind) {}
  const std::string& name() const override { return name_; }
  SourceKind kind() const override { return kind_; }

 private:
  std::string name_;
  SourceKind kind_;
};

class BagOfWordsSource final : public NamedSource {
 public:
  BagOfWordsSource(std::string name, bool idf)
      : NamedSource(std::move(name), idf ? SourceKind::TfIdf : SourceKind::Tf), idf_(idf) {}
  std::shared_ptr<const Encoder> fit(std::span<const TextItem> fit_on) const override {
    return std::make_shared<BagOfWordsEncoder>(fit_vocabulary(fit_on), idf_);
  }

 private:
  bool idf_;
};

class RandomSource final : public NamedSource {
 public:
  RandomSource(std::string name, std::size_t dim, std::uint64_t seed)
      : NamedSource(std::move(name), SourceKind::Random), dim_(dim), seed_(seed) {
    if (dim_ == 0) fail(ErrorCode::InvalidDimension, "random source '" + this->name() + "' has dim 0");
  }
  std::shared_ptr<const Encoder> fit(std::span<const TextItem> fit_on) const override {
    auto table = std::make_shared<const WordVectorTable>(
        random_embedding_table(fit_vocabulary(fit_on), dim_, seed_));
    return std::make_shared<PooledEncoder>(std::move(table));
  }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

class WordVectorSource final : public NamedSource {
 public:
  WordVectorSource(std::string name, std::shared_ptr<const WordVectorTable> table)
      : NamedSource(std::move(name), SourceKind::WordVectors),
        encoder_(std::make_shared<PooledEncoder>(std::move(table))) {}
  std::shared_ptr<const Encoder> fit(std::span<const TextItem>) const override { return encoder_; }

 private:
  std::shared_ptr<const Encoder> encoder_;
};

class PrecomputedSource final : public NamedSource {
 public:
  PrecomputedSource(std::string name, std::shared_ptr<const SentenceEmbeddingStore> store)
      : NamedSource(std::move(name), SourceKind::Precomputed),
        encoder_(std::make_shared<LookupEncoder>(this->name(), std::move(store))) {}
  std::shared_ptr<const Encoder> fit(std::span<const TextItem>) const override { return encoder_; }

 private:
  std::shared_ptr<const Encoder> encoder_;
};

}  // namespace

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Tf: return "tf";
    case SourceKind::TfIdf: return "tfidf";
    case SourceKind::Random: return "random";
    case SourceKind::WordVectors: return "word_vectors";
    case SourceKind::Precomputed: return "sentence_embeddings";
  }
  return "unknown";
}

SourcePtr make_tf_source(std::string name) {
  return std::make_shared<BagOfWordsSource>(std::move(name), false);
}
SourcePtr make_tfidf_source(std::string name) {
  return std::make_shared<BagOfWordsSource>(std::move(name), true);
}
SourcePtr make_random_source(std::string name, std::size_t dim, std::uint64_t seed) {
  return std::make_shared<RandomSource>(std::move(name), dim, seed);
}
SourcePtr make_word_vector_source(std::string name, std::shared_ptr<const WordVectorTable> table) {
  return std::make_shared<WordVectorSource>(std::move(name), std::move(table));
}
SourcePtr make_precomputed_source(std::string name,
                                  std::shared_ptr<const SentenceEmbeddingStore> store) {
  return std::make_shared<PrecomputedSource>(std::move(name), std::move(store));
}

}  // namespace sqb::embed

namespace sqb::embed {

std::uint64_t random_table_seed(std::uint64_t root_seed, std::size_t dim) {
  return substream(substream(root_seed, "random_table"), static_cast<std::uint64_t>(dim));
}

}  // namespace sqb::embed
