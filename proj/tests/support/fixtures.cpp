#include "support/fixtures.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sqb/common/csv.hpp"
#include "sqb/common/rng.hpp"
#include "sqb/corpus/tokenize.hpp"

namespace sqb::fixtures {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("sqb_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path data_path(const std::string& name) { return fs::path(SQB_TEST_DATA_DIR) / name; }

SyntheticSurvey write_synthetic_survey(const fs::path& dir, std::size_t n_respondents,
                                       std::size_t n_questions, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> t(n_questions);
  for (std::size_t q = 0; q < n_questions; ++q) t[q] = q < n_questions / 2 ? 1 : -1;
  rng.shuffle(std::span(t));

  auto qid = [](std::size_t q) {
    std::string s = std::to_string(q + 1);
    return "q" + std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s;
  };

  std::ostringstream responses, questions, scales, embeddings;
  csv::write_row(questions, {"question_id", "text"});
  csv::write_row(scales, {"question_id", "min", "max"});
  for (std::size_t q = 0; q < n_questions; ++q) {
    csv::write_row(questions, {qid(q), "How would you rate item number " + std::to_string(q + 1) + "?"});
    csv::write_row(scales, {qid(q), "0", "10"});
    embeddings << "{\"id\":\"" << qid(q) << "\",\"model\":\"synthetic\",\"dim\":1,\"vector\":["
               << t[q] << "]}\n";
  }
  csv::Row header{"idno", "group", "region"};
  for (std::size_t q = 0; q < n_questions; ++q) header.push_back(qid(q));
  csv::write_row(responses, header);
  const char* regions[] = {"north", "south", "east"};
  std::size_t cell = 0;
  for (std::size_t r = 0; r < n_respondents; ++r) {
    const int s = r % 2 == 0 ? 1 : -1;
    csv::Row row{"r" + std::to_string(1000 + r), s > 0 ? "A" : "B", regions[rng.below(3)]};
    for (std::size_t q = 0; q < n_questions; ++q) {
      if (++cell % 50 == 0) {
        row.push_back("88");
      } else {
        row.push_back(std::to_string(5 + 4 * s * t[q]));
      }
    }
    csv::write_row(responses, row);
  }
  SyntheticSurvey out{dir / "responses.csv", dir / "questions.csv", dir / "scales.csv",
                      dir / "survey_embeddings.jsonl", n_respondents, n_questions};
  csv::write_file_atomic(out.responses, responses.str());
  csv::write_file_atomic(out.questions, questions.str());
  csv::write_file_atomic(out.scales, scales.str());
  csv::write_file_atomic(out.embeddings, embeddings.str());
  return out;
}

std::shared_ptr<embed::WordVectorTable> semantic_word_vectors(
    const std::vector<corpus::ConceptTriad>& taxonomy,
    const std::vector<corpus::SurveyQuestion>& questions, std::size_t dim, std::uint64_t seed) {
  auto random_vector = [dim](Rng& rng) {
    embed::Vector v(dim);
    for (auto& x : v) x = rng.uniform_open(-1.0, 1.0);
    return v;
  };
  std::set<std::string> words;
  for (const auto& q : questions) {
    for (auto& tok : corpus::tokenize(q.text)) words.insert(std::move(tok));
  }
  std::map<std::string, embed::Vector> vectors;
  for (const auto& w : words) {
    Rng rng(substream(seed, w));
    vectors[w] = random_vector(rng);
  }
  for (const auto& triad : taxonomy) {
    auto ref = corpus::tokenize(triad.reference.phrase);
    auto sim = corpus::tokenize(triad.similar.phrase);
    std::set<std::string> ref_set(ref.begin(), ref.end()), sim_set(sim.begin(), sim.end());
    Rng rng(substream(seed, "triad." + triad.id));
    auto base = random_vector(rng);
    for (const auto& w : ref_set) {
      if (sim_set.contains(w)) continue;
      for (std::size_t i = 0; i < dim; ++i) vectors[w][i] = base[i] + rng.uniform_open(-0.1, 0.1);
    }
    for (const auto& w : sim_set) {
      if (ref_set.contains(w)) continue;
      for (std::size_t i = 0; i < dim; ++i) vectors[w][i] = base[i] + rng.uniform_open(-0.1, 0.1);
    }
  }
  auto table = std::make_shared<embed::WordVectorTable>(dim);
  for (auto& [w, v] : vectors) table->insert(w, std::move(v));
  return table;
}

}  // namespace sqb::fixtures
