#include "sqb/embed/word_vectors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sqb/common/csv.hpp"
#include "sqb/common/error.hpp"
#include "sqb/common/rng.hpp"
#include "sqb/corpus/tokenize.hpp"

namespace sqb::embed {
namespace {

std::string lowercase(std::string_view word) {
  std::string out(word);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool is_unsigned_integer(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

const Vector* WordVectorTable::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

bool WordVectorTable::insert(std::string word, Vector values) {
  if (values.size() != dim_) {
    fail(ErrorCode::DimensionMismatch, "vector for '" + word + "' has dim " +
                                           std::to_string(values.size()) + ", table dim " +
                                           std::to_string(dim_));
  }
  auto [it, inserted] = entries_.try_emplace(std::move(word), std::move(values));
  if (!inserted) ++duplicates_;
  return inserted;
}

WordVectorTable read_word_vectors(std::istream& in, std::string_view context,
                                  const std::unordered_set<std::string>* keep) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  WordVectorTable table;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_spaces(line);
    if (fields.empty()) continue;
    const std::string loc = std::string(context) + ":" + std::to_string(line_no);
    if (first_data && line_no == 1 && fields.size() == 2 && is_unsigned_integer(fields[0]) &&
        is_unsigned_integer(fields[1])) {
      continue;
    }
    if (fields.size() < 2) fail(ErrorCode::FormatError, loc + ": word without values");
    if (first_data) {
      dim = fields.size() - 1;
      table = WordVectorTable(dim);
      first_data = false;
    } else if (fields.size() - 1 != dim) {
      fail(ErrorCode::FormatError, loc + ": expected " + std::to_string(dim) + " values, found " +
                                       std::to_string(fields.size() - 1));
    }
    std::string word = lowercase(fields[0]);
    if (keep && !keep->contains(word)) continue;
    Vector values;
    values.reserve(dim);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = csv::parse_double(fields[i], loc);
      if (!std::isfinite(v)) fail(ErrorCode::FormatError, loc + ": non-finite value");
      values.push_back(v);
    }
    table.insert(std::move(word), std::move(values));
  }
  if (first_data) fail(ErrorCode::FormatError, std::string(context) + ": no vectors");
  return table;
}

std::string word_vectors_to_text(const WordVectorTable& table) {
  std::vector<const std::pair<const std::string, Vector>*> rows;
  for (const auto& e : table.entries()) rows.push_back(&e);
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->first < b->first; });
  std::string out;
  for (const auto* e : rows) {
    out += e->first;
    for (double v : e->second) {
      out += ' ';
      out += csv::format_double(v);
    }
    out += '\n';
  }
  return out;
}

WordVectorTable load_word_vectors(const std::filesystem::path& path,
                                  const std::unordered_set<std::string>* keep) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  return read_word_vectors(in, path.string(), keep);
}

Vector mean_pool(std::string_view text, const WordVectorTable& table) {
  Vector sum(table.dim(), 0.0);
  std::size_t hits = 0;
  for (const auto& token : corpus::tokenize(text)) {
    if (const Vector* v = table.find(token)) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
      ++hits;
    }
  }
  if (hits == 0) fail(ErrorCode::AllOOV, "every token is out of vocabulary: '" + std::string(text) + "'");
  for (auto& x : sum) x /= static_cast<double>(hits);
  return sum;
}

WordVectorTable random_embedding_table(const Vocabulary& vocab, std::size_t dim,
                                       std::uint64_t seed) {
  if (dim == 0) fail(ErrorCode::InvalidDimension, "random embedding dimension must be positive");
  std::vector<std::string> words = vocab.words();
  std::sort(words.begin(), words.end());
  Rng rng(seed);
  WordVectorTable table(dim);
  for (auto& word : words) {
    Vector v(dim);
    for (auto& x : v) x = rng.uniform_open(-1.0, 1.0);
    table.insert(std::move(word), std::move(v));
  }
  return table;
}

}  // namespace sqb::embed
