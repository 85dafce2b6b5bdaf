#include "sqb/report/commands.hpp"

#include <map>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "sqb/common/csv.hpp"
#include "sqb/corpus/chi_square.hpp"
#include "sqb/corpus/io.hpp"
#include "sqb/corpus/taxonomy.hpp"
#include "sqb/corpus/tokenize.hpp"
#include "sqb/embed/sentence_store.hpp"
#include "sqb/embed/word_vectors.hpp"

namespace sqb::report {

namespace fs = std::filesystem;

namespace {

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, std::string_view content) {
    csv::write_file_atomic(dir_ / name, content);
    files_.push_back(name);
  }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::vector<std::string> texts_of(std::span<const corpus::SurveyQuestion> questions) {
  std::vector<std::string> out;
  for (const auto& q : questions) out.push_back(q.text);
  return out;
}

std::string associations_csv(std::span<const corpus::SurveyQuestion> questions) {
  using corpus::Property;
  const std::pair<Property, Property> pairs[] = {
      {Property::LengthBin, Property::Basic},
      {Property::LengthBin, Property::Formulation},
      {Property::LengthBin, Property::ConcreteId},
      {Property::Basic, Property::Formulation},
  };
  std::ostringstream out;
  csv::write_row(out, {"property_a", "property_b", "statistic", "df", "p_value"});
  for (const auto& [a, b] : pairs) {
    csv::Row row{std::string(corpus::to_string(a)), std::string(corpus::to_string(b))};
    try {
      auto r = corpus::chi_square_independence(questions, a, b);
      row.push_back(csv::format_double(r.statistic));
      row.push_back(std::to_string(r.df));
      row.push_back(csv::format_double(r.p_value));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateTable) throw;
      row.insert(row.end(), {"nan", "0", "nan"});
    }
    csv::write_row(out, row);
  }
  return out.str();
}

std::string splits_csv(std::span<const probe::SplitPlan> plans) {
  std::ostringstream out;
  csv::write_row(out, {"target", "n_train", "n_test", "n_dropped", "disjoint_on"});
  for (const auto& p : plans) {
    std::string on;
    for (auto prop : p.disjoint_on) {
      if (!on.empty()) on += "+";
      on += corpus::to_string(prop);
    }
    csv::write_row(out, {std::string(probe::to_string(p.target)), std::to_string(p.train_ids.size()),
                         std::to_string(p.test_ids.size()), std::to_string(p.n_dropped), on});
  }
  return out.str();
}

void log_skipped(std::ostream& log, std::string_view analysis,
                 const std::vector<std::string>& names) {
  for (const auto& n : names) {
    log << analysis << ": skipping '" << n << "' (no embeddings file for this analysis)\n";
  }
}

void run_gen_corpus(const std::vector<corpus::SurveyQuestion>& questions, Output& out) {
  out.write("corpus.csv", corpus::corpus_to_csv(questions));
  out.write("corpus_summary.csv", corpus::corpus_summary_csv(questions));
}

void run_probe(const RunConfig& c, const std::vector<corpus::SurveyQuestion>& questions,
               Output& out, std::ostream& log) {
  std::vector<std::string> skipped;
  auto sources = build_sources(c, texts_of(questions), false, &skipped);
  log_skipped(log, "probe", skipped);
  for (auto dim : c.probe.random_dims) {
    bool present = false;
    for (const auto& rep : c.representations) {
      present |= rep.kind == embed::SourceKind::Random && rep.dim == dim;
    }
    if (!present) {
      sources.push_back(embed::make_random_source("random" + std::to_string(dim), dim,
                                                  embed::random_table_seed(c.seed, dim)));
    }
  }
  log << "probe: " << sources.size() << " representation(s) x " << c.probe.targets.size()
      << " target(s)\n";
  probe::ProbeSuiteOptions options;
  options.targets = c.probe.targets;
  options.train = c.probe.train;
  options.threads = c.threads;
  auto plans = probe::probe_splits(questions, options.targets, c.seed);
  out.write("probe_splits.csv", splits_csv(plans));
  out.write("property_associations.csv", associations_csv(questions));
  auto rows = probe::run_probe_suite(questions, sources, c.seed, options);
  out.write("probe_report.csv", probe::probe_report_csv(rows));
}

void run_simdiff(const RunConfig& c, const std::vector<corpus::SurveyQuestion>& questions,
                 Output& out, std::ostream& log) {
  std::vector<std::string> skipped;
  auto sources = build_sources(c, texts_of(questions), false, &skipped);
  log_skipped(log, "simdiff", skipped);
  log << "simdiff: " << sources.size() << " representation(s)\n";
  auto sets = simdiff::run_simdiff_suite(questions, sources, c.simdiff.options);
  out.write("simdiff_scores.csv", simdiff::scores_csv(sets));
  out.write("simdiff_percent_positive.csv", simdiff::percent_positive_csv(sets));
  out.write("simdiff_summary.csv", simdiff::distribution_csv(sets));
}

void run_predict(const RunConfig& c, Output& out, std::ostream& log) {
  const auto& p = c.predict;
  auto data = predict::load_survey(p.responses, p.questions, p.scales, p.ingest);
  log << "predict: " << data.respondents.size() << " respondents, " << data.question_texts.size()
      << " questions, " << data.records.size() << " responses (" << data.n_missing
      << " missing dropped)\n";
  std::vector<std::string> texts;
  for (const auto& [_, t] : data.question_texts) texts.push_back(t);
  std::vector<std::string> skipped;
  auto sources = build_sources(c, texts, true, &skipped);
  log_skipped(log, "predict", skipped);
  auto options = p.options;
  options.threads = c.threads;
  auto rows = predict::run_predictive_suite(data, sources, c.seed, options);
  out.write("predict_report.csv", predict::predict_report_csv(rows));
}

}  // namespace

std::vector<corpus::SurveyQuestion> build_corpus(const RunConfig& c) {
  if (!c.corpus.generate) return corpus::load_corpus(c.corpus.path);
  auto taxonomy = c.corpus.taxonomy ? corpus::load_taxonomy(*c.corpus.taxonomy)
                                    : corpus::default_taxonomy();
  auto templates = c.corpus.templates
                       ? corpus::load_template_table(*c.corpus.templates, *c.corpus.frames)
                       : corpus::default_template_table();
  return corpus::generate_corpus(taxonomy, templates, c.seed);
}

std::vector<embed::SourcePtr> build_sources(const RunConfig& c, const std::vector<std::string>& texts,
                                            bool survey, std::vector<std::string>* skipped) {
  std::unordered_set<std::string> keep;
  for (const auto& t : texts) {
    for (auto& tok : corpus::tokenize(t)) keep.insert(std::move(tok));
  }
  std::map<fs::path, std::shared_ptr<const embed::WordVectorTable>> tables;
  std::vector<embed::SourcePtr> sources;
  for (const auto& rep : c.representations) {
    switch (rep.kind) {
      case embed::SourceKind::Tf:
        sources.push_back(embed::make_tf_source(rep.name));
        break;
      case embed::SourceKind::TfIdf:
        sources.push_back(embed::make_tfidf_source(rep.name));
        break;
      case embed::SourceKind::Random:
        sources.push_back(
            embed::make_random_source(rep.name, rep.dim, embed::random_table_seed(c.seed, rep.dim)));
        break;
      case embed::SourceKind::WordVectors: {
        auto& table = tables[rep.path];
        if (!table) {
          table = std::make_shared<const embed::WordVectorTable>(
              embed::load_word_vectors(rep.path, &keep));
        }
        sources.push_back(embed::make_word_vector_source(rep.name, table));
        break;
      }
      case embed::SourceKind::Precomputed: {
        const auto& path = survey ? rep.survey_path : rep.path;
        if (path.empty()) {
          if (skipped) skipped->push_back(rep.name);
          break;
        }
        auto store = std::make_shared<const embed::SentenceEmbeddingStore>(
            embed::load_sentence_embeddings(path));
        sources.push_back(embed::make_precomputed_source(rep.name, store));
        break;
      }
    }
  }
  return sources;
}

std::vector<std::string> run_command(Command command, const RunConfig& c, std::ostream& log) {
  validate_config(c, command);
  Output out(c.out_dir);
  const bool all = command == Command::All;
  nlohmann::json meta;
  meta["command"] = std::string(to_string(command));
  meta["seed"] = c.seed;
  meta["version"] = std::string(kVersion);
  meta["config_hash"] = config_hash(c);
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : c.representations) {
    reps.push_back({{"name", r.name}, {"kind", std::string(embed::to_string(r.kind))}});
  }
  meta["representations"] = reps;

  const bool probe = command == Command::Probe || (all && c.probe.enabled);
  const bool simdiff = command == Command::Simdiff || (all && c.simdiff.enabled);
  const bool predict = command == Command::Predict || (all && c.predict.enabled);

  if (command == Command::GenCorpus || all || probe || simdiff) {
    auto questions = build_corpus(c);
    log << "corpus: " << questions.size() << " questions ("
        << (c.corpus.generate ? "generated" : "loaded") << ")\n";
    meta["corpus"] = {{"source", c.corpus.generate ? "generate" : "load"},
                      {"n_questions", questions.size()}};
    if (command == Command::GenCorpus || all) run_gen_corpus(questions, out);
    if (probe) {
      run_probe(c, questions, out, log);
      meta["notes"]["probe"] =
          "one controlled split per target shared by all representations; "
          "random_accuracy uses a random table of the representation's dimension";
    }
    if (simdiff) {
      run_simdiff(c, questions, out, log);
      meta["notes"]["simdiff"] =
          "scores per (triad, template); H2 pairs every ordered template pair; "
          "bag-of-words vocabularies fitted on the full corpus";
    }
  }
  if (predict) {
    run_predict(c, out, log);
    meta["notes"]["predict"] =
        "r_mean averages outer-fold r; r_pooled and its Fisher z CI use all outer test "
        "predictions; delta_pct is relative to the baseline r_mean";
  }
  auto files = out.files();
  files.push_back("run_metadata.json");
  meta["files"] = files;
  out.write("run_metadata.json", meta.dump(2) + "\n");
  log << "wrote " << files.size() << " file(s) to " << c.out_dir.string() << "\n";
  return files;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return 2;
    case ErrorCode::InfeasibleSplit: return 4;
    default: return 3;
  }
}

}  // namespace sqb::report
