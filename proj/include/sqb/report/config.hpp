#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sqb/embed/source.hpp"
#include "sqb/predict/suite.hpp"
#include "sqb/probe/suite.hpp"
#include "sqb/simdiff/suite.hpp"

namespace sqb::report {

struct RepresentationSpec {
  std::string name;
  embed::SourceKind kind{};
  /// Random tables only.
  std::size_t dim = 0;
  /// Word-vector file, or sentence embeddings of the corpus questions.
  std::filesystem::path path;
  /// Sentence embeddings of the survey questions (predictive analysis).
  std::filesystem::path survey_path;
};

struct CorpusSpec {
  bool generate = true;
  std::filesystem::path path;
  std::optional<std::filesystem::path> taxonomy;
  std::optional<std::filesystem::path> templates;
  std::optional<std::filesystem::path> frames;
};

struct ProbeSpec {
  bool enabled = true;
  std::vector<std::size_t> random_dims = {300, 768, 1024};
  std::vector<probe::ProbeTarget> targets = probe::all_targets();
  probe::TrainOptions train;
};

struct SimdiffSpec {
  bool enabled = true;
  simdiff::SimdiffOptions options;
};

struct PredictSpec {
  bool enabled = false;
  std::filesystem::path responses;
  std::filesystem::path questions;
  std::filesystem::path scales;
  predict::IngestOptions ingest;
  predict::PredictOptions options;
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  unsigned threads = 0;
  CorpusSpec corpus;
  std::vector<RepresentationSpec> representations;
  ProbeSpec probe;
  SimdiffSpec simdiff;
  PredictSpec predict;
};

/// Parses a TOML document. Relative paths are resolved against `base_dir`.
/// Unknown keys and wrongly typed values raise ConfigError.
RunConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir,
                       std::string_view source_name = "config");
RunConfig load_config(const std::filesystem::path& path);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  /// Keep only these representations, in manifest order.
  std::optional<std::vector<std::string>> reps;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

enum class Command { GenCorpus, Probe, Simdiff, Predict, All };

std::string_view to_string(Command command);

/// Checks everything the command will need before any computation: input
/// files exist, dims and grids are usable, names are unique.
void validate_config(const RunConfig& config, Command command);

/// Stable text form of the resolved configuration; hashed into run metadata.
std::string canonical_config(const RunConfig& config);
std::string config_hash(const RunConfig& config);

}  // namespace sqb::report
