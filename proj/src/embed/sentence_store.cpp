#include "sqb/embed/sentence_store.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "sqb/common/error.hpp"

namespace sqb::embed {

const Vector* SentenceEmbeddingStore::find(std::string_view id) const {
  auto it = entries.find(std::string(id));
  return it == entries.end() ? nullptr : &it->second;
}

SentenceEmbeddingStore read_sentence_embeddings(std::istream& in, std::string_view context) {
  SentenceEmbeddingStore store;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string loc = std::string(context) + ":" + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::FormatError, loc + ": " + e.what());
    }
    if (!obj.is_object()) fail(ErrorCode::FormatError, loc + ": expected a JSON object");
    if (obj.contains("meta") && !obj.contains("id")) {
      store.meta = obj["meta"];
      continue;
    }
    for (const char* key : {"id", "model", "dim", "vector"}) {
      if (!obj.contains(key)) fail(ErrorCode::FormatError, loc + ": missing '" + key + "'");
    }
    if (!obj["id"].is_string() || !obj["model"].is_string() ||
        !obj["dim"].is_number_unsigned() || !obj["vector"].is_array()) {
      fail(ErrorCode::FormatError, loc + ": wrong field types");
    }
    auto id = obj["id"].get<std::string>();
    auto model = obj["model"].get<std::string>();
    auto dim = obj["dim"].get<std::size_t>();
    if (dim == 0) fail(ErrorCode::FormatError, loc + ": dim must be positive");
    if (!have_header) {
      store.model_name = model;
      store.dim = dim;
      have_header = true;
    } else if (model != store.model_name) {
      fail(ErrorCode::FormatError,
           loc + ": model '" + model + "' differs from '" + store.model_name + "'");
    } else if (dim != store.dim) {
      fail(ErrorCode::FormatError, loc + ": dim " + std::to_string(dim) + " differs from " +
                                       std::to_string(store.dim));
    }
    const auto& values = obj["vector"];
    if (values.size() != dim) {
      fail(ErrorCode::FormatError, loc + ": dim " + std::to_string(dim) + " but " +
                                       std::to_string(values.size()) + " values");
    }
    Vector v;
    v.reserve(dim);
    for (const auto& x : values) {
      if (!x.is_number()) fail(ErrorCode::FormatError, loc + ": non-numeric vector entry");
      double d = x.get<double>();
      if (!std::isfinite(d)) fail(ErrorCode::FormatError, loc + ": non-finite vector entry");
      v.push_back(d);
    }
    if (!store.entries.emplace(id, std::move(v)).second) {
      fail(ErrorCode::DuplicateId, loc + ": repeated id '" + id + "'");
    }
  }
  if (!have_header) fail(ErrorCode::FormatError, std::string(context) + ": no embeddings");
  return store;
}

SentenceEmbeddingStore load_sentence_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  return read_sentence_embeddings(in, path.string());
}

std::string sentence_embeddings_to_jsonl(const SentenceEmbeddingStore& store) {
  std::vector<std::string> ids;
  ids.reserve(store.entries.size());
  for (const auto& [id, _] : store.entries) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  std::ostringstream out;
  if (!store.meta.is_null()) out << nlohmann::json{{"meta", store.meta}}.dump() << '\n';
  for (const auto& id : ids) {
    nlohmann::json line = {{"id", id},
                           {"model", store.model_name},
                           {"dim", store.dim},
                           {"vector", store.entries.at(id)}};
    out << line.dump() << '\n';
  }
  return out.str();
}

}  // namespace sqb::embed
