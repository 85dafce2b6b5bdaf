#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqb/report/commands.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sqb;
  CLI::App app{"Construct-validity bench for survey-question embeddings"};
  app.set_version_flag("--version", std::string(report::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> reps;

  const std::pair<const char*, report::Command> commands[] = {
      {"gen-corpus", report::Command::GenCorpus},
      {"probe", report::Command::Probe},
      {"simdiff", report::Command::Simdiff},
      {"predict", report::Command::Predict},
      {"all", report::Command::All},
  };
  const char* help[] = {"Generate the question corpus and its summary",
                        "Run the probing classifiers",
                        "Score similar/dissimilar triads by cosine difference",
                        "Predict held-out survey responses",
                        "Run every enabled analysis"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", config_path, "TOML run configuration")->required();
    sub->add_option("--seed", seed, "Override the root seed");
    sub->add_option("--out-dir", out_dir, "Override the output directory");
    sub->add_option("--reps", reps, "Comma-separated representation names to keep");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  report::Command command = report::Command::All;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) command = commands[i].second;
  }

  try {
    auto config = report::load_config(config_path);
    report::Overrides overrides;
    overrides.seed = seed;
    if (out_dir) overrides.out_dir = *out_dir;
    if (reps) overrides.reps = split_list(*reps);
    report::apply_overrides(config, overrides);
    report::run_command(command, config, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return report::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
