#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sqb/common/csv.hpp"
#include "sqb/corpus/taxonomy.hpp"
#include "sqb/report/commands.hpp"
#include "sqb/report/config.hpp"
#include "support/fixtures.hpp"

using namespace sqb;
using namespace sqb::report;
using sqb::fixtures::code_of;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig parse(const std::string& text, const fs::path& base = "/base") {
  return parse_config(text, base, "test.toml");
}

}  // namespace

TEST(Config, Defaults) {
  auto c = parse("");
  EXPECT_EQ(c.seed, 0u);
  EXPECT_TRUE(c.corpus.generate);
  EXPECT_TRUE(c.probe.enabled);
  EXPECT_TRUE(c.simdiff.enabled);
  EXPECT_FALSE(c.predict.enabled);
  EXPECT_EQ(c.probe.random_dims, (std::vector<std::size_t>{300, 768, 1024}));
  EXPECT_EQ(c.predict.options.outer_k, 10u);
  EXPECT_EQ(c.predict.options.lambda_grid.size(), 20u);
  EXPECT_EQ(c.predict.ingest.missing_codes.size(), 8u);
}

TEST(Config, FullDocument) {
  auto c = parse(R"(
seed = 7
out_dir = "results"
threads = 2

[corpus]
source = "load"
path = "corpus.csv"

[analyses]
probe = false
predict = true

[[representation]]
name = "tf"
kind = "tf"

[[representation]]
name = "glove"
kind = "word_vectors"
path = "/abs/glove.txt"

[[representation]]
name = "r300"
kind = "random"
dim = 300

[probe]
targets = ["basic", "formulation"]
max_iter = 100
l2 = 0.01

[simdiff]
jaccard = false
hypotheses = ["H2"]

[predict]
responses = "r.csv"
questions = "q.csv"
scales = "s.csv"
background = ["gender"]
models = ["random_forest"]
lambda_min = 0.01
lambda_max = 1.0
lambda_count = 3
rf_min_samples_leaf = [2, 4]
)");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.out_dir, fs::path("/base/results"));
  EXPECT_EQ(c.threads, 2u);
  EXPECT_FALSE(c.corpus.generate);
  EXPECT_EQ(c.corpus.path, fs::path("/base/corpus.csv"));
  EXPECT_FALSE(c.probe.enabled);
  EXPECT_TRUE(c.predict.enabled);
  ASSERT_EQ(c.representations.size(), 3u);
  EXPECT_EQ(c.representations[1].kind, embed::SourceKind::WordVectors);
  EXPECT_EQ(c.representations[1].path, fs::path("/abs/glove.txt"));
  EXPECT_EQ(c.representations[2].dim, 300u);
  EXPECT_EQ(c.probe.targets, (std::vector{probe::ProbeTarget::Basic, probe::ProbeTarget::Formulation}));
  EXPECT_EQ(c.probe.train.max_iter, 100);
  EXPECT_EQ(c.probe.train.l2, 0.01);
  EXPECT_FALSE(c.simdiff.options.include_jaccard);
  EXPECT_EQ(c.simdiff.options.hypotheses, std::vector{simdiff::Hypothesis::H2});
  EXPECT_EQ(c.predict.ingest.background, std::vector<std::string>{"gender"});
  EXPECT_EQ(c.predict.options.models, std::vector{predict::ModelKind::RandomForest});
  ASSERT_EQ(c.predict.options.lambda_grid.size(), 3u);
  EXPECT_NEAR(c.predict.options.lambda_grid[0], 1.0, 1e-12);
  EXPECT_NEAR(c.predict.options.lambda_grid[1], 0.1, 1e-12);
  EXPECT_EQ(c.predict.options.rf_min_samples_leaf, (std::vector<std::size_t>{2, 4}));
}

TEST(Config, ShippedExampleMatchesDefaults) {
  auto c = load_config(fs::path(SQB_SHIPPED_DATA_DIR) / "example_run.toml");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.out_dir, fs::path(SQB_SHIPPED_DATA_DIR) / "out");
  ASSERT_EQ(c.representations.size(), 2u);
  EXPECT_EQ(c.probe.targets, probe::all_targets());
  const auto defaults = parse("");
  EXPECT_EQ(c.probe.random_dims, defaults.probe.random_dims);
  EXPECT_EQ(c.predict.options.lambda_grid, defaults.predict.options.lambda_grid);
  EXPECT_EQ(c.predict.options.rf_min_samples_leaf, defaults.predict.options.rf_min_samples_leaf);
  EXPECT_EQ(c.predict.ingest.background.size(), 11u);
  EXPECT_NO_THROW(validate_config(c, Command::All));
}

TEST(Config, Rejections) {
  auto bad = [](const std::string& text) { return code_of([&] { parse(text); }); };
  EXPECT_EQ(bad("sed = 1"), ErrorCode::ConfigError);
  EXPECT_EQ(bad("seed = \"one\""), ErrorCode::ConfigError);
  EXPECT_EQ(bad("seed = -1"), ErrorCode::ConfigError);
  EXPECT_EQ(bad("[corpus]\nsource = \"download\""), ErrorCode::ConfigError);
  EXPECT_EQ(bad("[[representation]]\nname = \"x\"\nkind = \"elmo\""), ErrorCode::ConfigError);
  EXPECT_EQ(bad("[[representation]]\nkind = \"tf\""), ErrorCode::ConfigError);
  EXPECT_EQ(bad("[probe]\ntargets = [\"mood\"]"), ErrorCode::ConfigError);
  EXPECT_EQ(bad("[probe]\nextra = 1"), ErrorCode::ConfigError);
  EXPECT_EQ(bad("[predict]\nlambda_grid = [0.1]\nlambda_min = 0.01"), ErrorCode::ConfigError);
  EXPECT_EQ(bad("[predict]\nmodels = [\"svm\"]"), ErrorCode::ConfigError);
  EXPECT_EQ(bad("this is = not toml ["), ErrorCode::ConfigError);
}

TEST(Config, OverridesFilterManifest) {
  auto c = parse("[[representation]]\nname = \"a\"\nkind = \"tf\"\n"
                 "[[representation]]\nname = \"b\"\nkind = \"tfidf\"\n"
                 "[[representation]]\nname = \"c\"\nkind = \"random\"\ndim = 4\n");
  Overrides o;
  o.seed = 99;
  o.out_dir = "/tmp/x";
  o.reps = std::vector<std::string>{"c", "a"};
  apply_overrides(c, o);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.out_dir, fs::path("/tmp/x"));
  ASSERT_EQ(c.representations.size(), 2u);
  EXPECT_EQ(c.representations[0].name, "a");
  EXPECT_EQ(c.representations[1].name, "c");
  Overrides unknown;
  unknown.reps = std::vector<std::string>{"zz"};
  EXPECT_EQ(code_of([&] { apply_overrides(c, unknown); }), ErrorCode::ConfigError);
}

TEST(Config, ValidationFailsFast) {
  auto missing = parse("[[representation]]\nname = \"g\"\nkind = \"word_vectors\"\npath = \"/nonexistent/g.txt\"\n");
  std::string msg;
  EXPECT_EQ(code_of([&] { validate_config(missing, Command::Probe); }, &msg), ErrorCode::ConfigError);
  EXPECT_NE(msg.find("g"), std::string::npos);
  EXPECT_NO_THROW(validate_config(missing, Command::GenCorpus));

  auto dup = parse("[[representation]]\nname = \"a\"\nkind = \"tf\"\n[[representation]]\nname = \"a\"\nkind = \"tfidf\"\n");
  EXPECT_EQ(code_of([&] { validate_config(dup, Command::Simdiff); }), ErrorCode::ConfigError);

  auto zero_dim = parse("[[representation]]\nname = \"r\"\nkind = \"random\"\n");
  EXPECT_EQ(code_of([&] { validate_config(zero_dim, Command::Probe); }), ErrorCode::ConfigError);

  auto no_survey = parse("[analyses]\npredict = true\n");
  EXPECT_EQ(code_of([&] { validate_config(no_survey, Command::Predict); }), ErrorCode::ConfigError);
}

TEST(Config, HashIgnoresOutputLocation) {
  auto a = parse("seed = 1\nout_dir = \"a\"\nthreads = 1\n");
  auto b = parse("seed = 1\nout_dir = \"b\"\nthreads = 4\n");
  auto c = parse("seed = 2\n");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code(ErrorCode::ConfigError), 2);
  EXPECT_EQ(exit_code(ErrorCode::InfeasibleSplit), 4);
  EXPECT_EQ(exit_code(ErrorCode::ScaleViolation), 3);
  EXPECT_EQ(exit_code(ErrorCode::MissingEmbedding), 3);
  EXPECT_EQ(to_string(Command::GenCorpus), "gen-corpus");
}

TEST(Commands, GenCorpusWritesCsvSummaryAndMetadata) {
  auto dir = fixtures::fresh_dir("report_gen");
  auto c = parse("seed = 42\n", dir);
  c.out_dir = dir / "out";
  std::ostringstream log;
  auto files = run_command(Command::GenCorpus, c, log);
  EXPECT_EQ(files, (std::vector<std::string>{"corpus.csv", "corpus_summary.csv", "run_metadata.json"}));
  auto table = csv::read_file(c.out_dir / "corpus.csv");
  EXPECT_EQ(table.rows.size(), 2223u);
  auto summary = slurp(c.out_dir / "corpus_summary.csv");
  EXPECT_NE(summary.find("total,triads,39"), std::string::npos);
  auto meta = nlohmann::json::parse(slurp(c.out_dir / "run_metadata.json"));
  EXPECT_EQ(meta["command"], "gen-corpus");
  EXPECT_EQ(meta["seed"], 42);
  EXPECT_EQ(meta["config_hash"], config_hash(c));
  auto first = slurp(c.out_dir / "corpus.csv");
  run_command(Command::GenCorpus, c, log);
  EXPECT_EQ(slurp(c.out_dir / "corpus.csv"), first);
}

TEST(Commands, MalformedTemplateFileNamesLine) {
  auto dir = fixtures::fresh_dir("report_bad_template");
  std::ofstream(dir / "templates.csv") << "template_id,formulation,pattern\nDR1,DR,{ask}?\nX,DR,no slot\n";
  std::ofstream(dir / "frames.csv") << corpus::default_frames_csv();
  auto c = parse("[corpus]\ntemplates = \"templates.csv\"\nframes = \"frames.csv\"\n", dir);
  c.out_dir = dir / "out";
  std::ostringstream log;
  std::string msg;
  EXPECT_EQ(code_of([&] { run_command(Command::GenCorpus, c, log); }, &msg), ErrorCode::MalformedTemplate);
  EXPECT_NE(msg.find("templates.csv:3"), std::string::npos) << msg;
}

TEST(Commands, SimdiffJaccardH1IsZero) {
  auto dir = fixtures::fresh_dir("report_simdiff");
  auto c = parse("[analyses]\nprobe = false\n[[representation]]\nname = \"tfidf\"\nkind = \"tfidf\"\n", dir);
  c.out_dir = dir / "out";
  std::ostringstream log;
  run_command(Command::Simdiff, c, log);
  auto pp = csv::read_file(c.out_dir / "simdiff_percent_positive.csv");
  std::size_t jaccard_rows = 0;
  for (const auto& row : pp.rows) {
    if (row[0] == "jaccard" && row[1] == "H1") {
      ++jaccard_rows;
      EXPECT_EQ(row[4], "0");
    }
  }
  EXPECT_EQ(jaccard_rows, 14u);
  auto dist = csv::read_file(c.out_dir / "simdiff_summary.csv");
  EXPECT_EQ(dist.rows.size(), 4u * 13u);
}

TEST(Commands, ProbeReportLayout) {
  auto dir = fixtures::fresh_dir("report_probe");
  auto c = parse(R"(
[[representation]]
name = "tf"
kind = "tf"
[probe]
random_dims = [8]
targets = ["formulation"]
max_iter = 30
)", dir);
  c.out_dir = dir / "out";
  std::ostringstream log;
  auto files = run_command(Command::Probe, c, log);
  auto report = csv::read_file(c.out_dir / "probe_report.csv");
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_EQ(report.rows[0][0], "majority");
  EXPECT_EQ(report.rows[1][0], "tf");
  EXPECT_EQ(report.rows[2][0], "random8");
  EXPECT_EQ(report.rows[2][2], report.rows[2][4]);
  EXPECT_NE(std::find(files.begin(), files.end(), "probe_splits.csv"), files.end());
  EXPECT_TRUE(fs::exists(c.out_dir / "property_associations.csv"));
}

TEST(Commands, MissingSentenceEmbeddingNamesRepresentation) {
  auto dir = fixtures::fresh_dir("report_missing_embedding");
  std::ofstream(dir / "emb.jsonl") << "{\"id\":\"nope\",\"model\":\"m\",\"dim\":1,\"vector\":[1]}\n";
  auto c = parse("[analyses]\nprobe = false\n[[representation]]\nname = \"bert\"\n"
                 "kind = \"sentence_embeddings\"\npath = \"emb.jsonl\"\n", dir);
  c.out_dir = dir / "out";
  std::ostringstream log;
  std::string msg;
  EXPECT_EQ(code_of([&] { run_command(Command::Simdiff, c, log); }, &msg), ErrorCode::MissingEmbedding);
  EXPECT_NE(msg.find("bert"), std::string::npos) << msg;
}
