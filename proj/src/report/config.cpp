#include "sqb/report/config.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "sqb/common/csv.hpp"
#include "sqb/common/error.hpp"
#include "sqb/common/rng.hpp"

namespace sqb::report {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  fail(ErrorCode::ConfigError, where + ": " + what);
}

class Reader {
 public:
  Reader(const toml::table& table, std::string where, const fs::path& base)
      : table_(table), where_(std::move(where)), base_(base) {}

  void allow(std::initializer_list<std::string_view> keys) {
    std::set<std::string_view> ok(keys);
    for (const auto& [key, _] : table_) {
      if (!ok.contains(key.str())) config_error(where_, "unknown key '" + std::string(key.str()) + "'");
    }
  }

  bool has(std::string_view key) const { return table_.contains(key); }

  template <class T>
  std::optional<T> get(std::string_view key) const {
    const auto* node = table_.get(key);
    if (!node) return std::nullopt;
    if constexpr (std::is_same_v<T, double>) {
      if (auto v = node->value<double>()) return *v;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (node->is_boolean()) return node->as_boolean()->get();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (node->is_string()) return node->as_string()->get();
    } else {
      if (node->is_integer()) return static_cast<T>(node->as_integer()->get());
    }
    config_error(where_, "key '" + std::string(key) + "' has the wrong type");
  }

  std::optional<std::uint64_t> get_count(std::string_view key) const {
    auto v = get<std::int64_t>(key);
    if (v && *v < 0) config_error(where_, "key '" + std::string(key) + "' must be >= 0");
    if (!v) return std::nullopt;
    return static_cast<std::uint64_t>(*v);
  }

  std::optional<fs::path> get_path(std::string_view key) const {
    auto s = get<std::string>(key);
    if (!s) return std::nullopt;
    fs::path p(*s);
    return p.is_absolute() ? p : base_ / p;
  }

  template <class T>
  std::optional<std::vector<T>> get_list(std::string_view key) const {
    const auto* node = table_.get(key);
    if (!node) return std::nullopt;
    const auto* arr = node->as_array();
    if (!arr) config_error(where_, "key '" + std::string(key) + "' must be an array");
    std::vector<T> out;
    for (const auto& el : *arr) {
      if constexpr (std::is_same_v<T, std::string>) {
        if (!el.is_string()) config_error(where_, "key '" + std::string(key) + "' must hold strings");
        out.push_back(el.as_string()->get());
      } else if constexpr (std::is_same_v<T, double>) {
        auto v = el.value<double>();
        if (!v) config_error(where_, "key '" + std::string(key) + "' must hold numbers");
        out.push_back(*v);
      } else {
        if (!el.is_integer() || el.as_integer()->get() < 0) {
          config_error(where_, "key '" + std::string(key) + "' must hold non-negative integers");
        }
        out.push_back(static_cast<T>(el.as_integer()->get()));
      }
    }
    return out;
  }

  const toml::table* sub(std::string_view key) const {
    const auto* node = table_.get(key);
    if (!node) return nullptr;
    if (!node->is_table()) config_error(where_, "'" + std::string(key) + "' must be a table");
    return node->as_table();
  }

  const std::string& where() const { return where_; }

 private:
  const toml::table& table_;
  std::string where_;
  fs::path base_;
};

embed::SourceKind parse_kind(std::string_view kind, const std::string& where) {
  using embed::SourceKind;
  for (auto k : {SourceKind::Tf, SourceKind::TfIdf, SourceKind::Random, SourceKind::WordVectors,
                 SourceKind::Precomputed}) {
    if (embed::to_string(k) == kind) return k;
  }
  config_error(where, "unknown representation kind '" + std::string(kind) + "'");
}

template <class Fn>
auto wrap(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    config_error(where, e.what());
  }
}

}  // namespace

RunConfig parse_config(std::string_view toml_text, const fs::path& base_dir,
                       std::string_view source_name) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source_name);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " (line " << e.source().begin.line << ")";
    config_error(std::string(source_name), msg.str());
  }
  RunConfig c;
  Reader top(root, std::string(source_name), base_dir);
  top.allow({"seed", "out_dir", "threads", "corpus", "analyses", "representation", "probe",
             "simdiff", "predict"});
  if (auto v = top.get_count("seed")) c.seed = *v;
  if (auto v = top.get_path("out_dir")) c.out_dir = *v;
  if (auto v = top.get_count("threads")) c.threads = static_cast<unsigned>(*v);

  if (const auto* t = top.sub("corpus")) {
    Reader r(*t, std::string(source_name) + " [corpus]", base_dir);
    r.allow({"source", "path", "taxonomy", "templates", "frames"});
    auto src = r.get<std::string>("source").value_or("generate");
    if (src != "generate" && src != "load") config_error(r.where(), "source must be generate or load");
    c.corpus.generate = src == "generate";
    if (auto p = r.get_path("path")) c.corpus.path = *p;
    c.corpus.taxonomy = r.get_path("taxonomy");
    c.corpus.templates = r.get_path("templates");
    c.corpus.frames = r.get_path("frames");
  }
  if (const auto* t = top.sub("analyses")) {
    Reader r(*t, std::string(source_name) + " [analyses]", base_dir);
    r.allow({"probe", "simdiff", "predict"});
    if (auto v = r.get<bool>("probe")) c.probe.enabled = *v;
    if (auto v = r.get<bool>("simdiff")) c.simdiff.enabled = *v;
    if (auto v = r.get<bool>("predict")) c.predict.enabled = *v;
  }
  if (const auto* node = root.get("representation")) {
    const auto* arr = node->as_array();
    if (!arr) config_error(std::string(source_name), "'representation' must be an array of tables");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const auto* t = (*arr)[i].as_table();
      std::string where = std::string(source_name) + " [[representation]] #" + std::to_string(i + 1);
      if (!t) config_error(where, "must be a table");
      Reader r(*t, where, base_dir);
      r.allow({"name", "kind", "dim", "path", "survey_path"});
      RepresentationSpec rep;
      auto name = r.get<std::string>("name");
      auto kind = r.get<std::string>("kind");
      if (!name || name->empty()) config_error(where, "missing 'name'");
      if (!kind) config_error(where, "missing 'kind'");
      rep.name = *name;
      rep.kind = parse_kind(*kind, where);
      if (auto v = r.get_count("dim")) rep.dim = static_cast<std::size_t>(*v);
      if (auto p = r.get_path("path")) rep.path = *p;
      if (auto p = r.get_path("survey_path")) rep.survey_path = *p;
      c.representations.push_back(std::move(rep));
    }
  }
  if (const auto* t = top.sub("probe")) {
    Reader r(*t, std::string(source_name) + " [probe]", base_dir);
    r.allow({"random_dims", "targets", "l2", "lr", "max_iter", "tol"});
    if (auto v = r.get_list<std::size_t>("random_dims")) c.probe.random_dims = *v;
    if (auto v = r.get_list<std::string>("targets")) {
      c.probe.targets.clear();
      for (const auto& name : *v) {
        c.probe.targets.push_back(wrap(r.where(), [&] { return probe::parse_target(name); }));
      }
    }
    if (auto v = r.get<double>("l2")) c.probe.train.l2 = *v;
    if (auto v = r.get<double>("lr")) c.probe.train.lr = *v;
    if (auto v = r.get_count("max_iter")) c.probe.train.max_iter = static_cast<int>(*v);
    if (auto v = r.get<double>("tol")) c.probe.train.tol = *v;
  }
  if (const auto* t = top.sub("simdiff")) {
    Reader r(*t, std::string(source_name) + " [simdiff]", base_dir);
    r.allow({"jaccard", "hypotheses"});
    if (auto v = r.get<bool>("jaccard")) c.simdiff.options.include_jaccard = *v;
    if (auto v = r.get_list<std::string>("hypotheses")) {
      c.simdiff.options.hypotheses.clear();
      for (const auto& h : *v) {
        if (h == "H1") {
          c.simdiff.options.hypotheses.push_back(simdiff::Hypothesis::H1);
        } else if (h == "H2") {
          c.simdiff.options.hypotheses.push_back(simdiff::Hypothesis::H2);
        } else {
          config_error(r.where(), "unknown hypothesis '" + h + "'");
        }
      }
    }
  }
  if (const auto* t = top.sub("predict")) {
    Reader r(*t, std::string(source_name) + " [predict]", base_dir);
    r.allow({"responses", "questions", "scales", "id_column", "background", "missing_codes",
             "outer_folds", "inner_folds", "models", "lambda_grid", "lambda_min", "lambda_max",
             "lambda_count", "lasso_tol", "lasso_max_sweeps", "rf_n_trees",
             "rf_min_samples_leaf", "rf_max_features", "rf_max_depth"});
    auto& p = c.predict;
    if (auto v = r.get_path("responses")) p.responses = *v;
    if (auto v = r.get_path("questions")) p.questions = *v;
    if (auto v = r.get_path("scales")) p.scales = *v;
    if (auto v = r.get<std::string>("id_column")) p.ingest.id_column = *v;
    if (auto v = r.get_list<std::string>("background")) p.ingest.background = *v;
    if (auto v = r.get_list<std::string>("missing_codes")) p.ingest.missing_codes = *v;
    if (auto v = r.get_count("outer_folds")) p.options.outer_k = static_cast<std::size_t>(*v);
    if (auto v = r.get_count("inner_folds")) p.options.inner_k = static_cast<std::size_t>(*v);
    if (auto v = r.get_list<std::string>("models")) {
      p.options.models.clear();
      for (const auto& m : *v) {
        p.options.models.push_back(wrap(r.where(), [&] { return predict::parse_model(m); }));
      }
    }
    if (r.has("lambda_grid") &&
        (r.has("lambda_min") || r.has("lambda_max") || r.has("lambda_count"))) {
      config_error(r.where(), "give either lambda_grid or lambda_min/lambda_max/lambda_count");
    }
    if (auto v = r.get_list<double>("lambda_grid")) {
      p.options.lambda_grid = *v;
    } else if (r.has("lambda_min") || r.has("lambda_max") || r.has("lambda_count")) {
      double lo = r.get<double>("lambda_min").value_or(1e-4);
      double hi = r.get<double>("lambda_max").value_or(1e1);
      auto n = r.get_count("lambda_count").value_or(20);
      p.options.lambda_grid =
          wrap(r.where(), [&] { return predict::logspace_grid(lo, hi, static_cast<std::size_t>(n)); });
    }
    if (auto v = r.get<double>("lasso_tol")) p.options.lasso.tol = *v;
    if (auto v = r.get_count("lasso_max_sweeps")) p.options.lasso.max_sweeps = static_cast<int>(*v);
    if (auto v = r.get_list<std::size_t>("rf_n_trees")) p.options.rf_n_trees = *v;
    if (auto v = r.get_list<std::size_t>("rf_min_samples_leaf")) p.options.rf_min_samples_leaf = *v;
    if (auto v = r.get<double>("rf_max_features")) p.options.rf_max_features = *v;
    if (auto v = r.get_count("rf_max_depth")) p.options.rf_max_depth = static_cast<std::size_t>(*v);
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = csv::read_text(path);
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, std::string("cannot read config: ") + e.what());
  }
  return parse_config(text, fs::absolute(path).parent_path(), path.string());
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  if (overrides.reps) {
    std::vector<RepresentationSpec> kept;
    for (const auto& name : *overrides.reps) {
      auto it = std::find_if(config.representations.begin(), config.representations.end(),
                             [&](const RepresentationSpec& r) { return r.name == name; });
      if (it == config.representations.end()) {
        fail(ErrorCode::ConfigError, "--reps names unknown representation '" + name + "'");
      }
    }
    for (const auto& rep : config.representations) {
      if (std::find(overrides.reps->begin(), overrides.reps->end(), rep.name) !=
          overrides.reps->end()) {
        kept.push_back(rep);
      }
    }
    config.representations = std::move(kept);
  }
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::GenCorpus: return "gen-corpus";
    case Command::Probe: return "probe";
    case Command::Simdiff: return "simdiff";
    case Command::Predict: return "predict";
    case Command::All: return "all";
  }
  return "unknown";
}

void validate_config(const RunConfig& c, Command command) {
  const bool all = command == Command::All;
  const bool probe = command == Command::Probe || (all && c.probe.enabled);
  const bool simdiff = command == Command::Simdiff || (all && c.simdiff.enabled);
  const bool predict = command == Command::Predict || (all && c.predict.enabled);
  const bool corpus_needed = command == Command::GenCorpus || probe || simdiff;

  auto need_file = [](const fs::path& p, const std::string& what) {
    if (p.empty()) fail(ErrorCode::ConfigError, what + " is not set");
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) fail(ErrorCode::ConfigError, what + " not found: " + p.string());
  };

  if (corpus_needed) {
    if (c.corpus.generate) {
      if (c.corpus.taxonomy) need_file(*c.corpus.taxonomy, "corpus taxonomy");
      if (c.corpus.templates) need_file(*c.corpus.templates, "corpus templates");
      if (c.corpus.frames) need_file(*c.corpus.frames, "corpus frames");
      if (c.corpus.templates.has_value() != c.corpus.frames.has_value()) {
        fail(ErrorCode::ConfigError, "corpus templates and frames must be given together");
      }
    } else {
      need_file(c.corpus.path, "corpus path");
    }
  }

  std::set<std::string> names;
  for (const auto& rep : c.representations) {
    if (!names.insert(rep.name).second) {
      fail(ErrorCode::ConfigError, "duplicate representation name '" + rep.name + "'");
    }
    const std::string what = "representation '" + rep.name + "'";
    switch (rep.kind) {
      case embed::SourceKind::Random:
        if (rep.dim == 0) fail(ErrorCode::ConfigError, what + ": random needs dim > 0");
        break;
      case embed::SourceKind::WordVectors:
        if (probe || simdiff || predict) need_file(rep.path, what + " path");
        break;
      case embed::SourceKind::Precomputed:
        if (rep.path.empty() && rep.survey_path.empty()) {
          fail(ErrorCode::ConfigError, what + ": needs path, survey_path or both");
        }
        if ((probe || simdiff) && !rep.path.empty()) need_file(rep.path, what + " path");
        if (predict && !rep.survey_path.empty()) need_file(rep.survey_path, what + " survey_path");
        break;
      default:
        break;
    }
  }
  if (probe) {
    if (c.probe.targets.empty()) fail(ErrorCode::ConfigError, "probe targets are empty");
    for (auto d : c.probe.random_dims) {
      if (d == 0) fail(ErrorCode::ConfigError, "probe random_dims must be positive");
    }
    const auto& t = c.probe.train;
    if (!(t.l2 >= 0) || !(t.lr > 0) || !(t.tol >= 0)) {
      fail(ErrorCode::ConfigError, "probe l2/tol must be >= 0 and lr > 0");
    }
  }
  if (simdiff && c.simdiff.options.hypotheses.empty()) {
    fail(ErrorCode::ConfigError, "simdiff hypotheses are empty");
  }
  if (predict) {
    const auto& p = c.predict;
    need_file(p.responses, "predict responses");
    need_file(p.questions, "predict questions");
    need_file(p.scales, "predict scales");
    if (p.options.outer_k < 2 || p.options.inner_k < 2) {
      fail(ErrorCode::ConfigError, "predict outer_folds and inner_folds must be >= 2");
    }
    if (p.options.models.empty()) fail(ErrorCode::ConfigError, "predict models are empty");
    if (p.options.lambda_grid.empty()) fail(ErrorCode::ConfigError, "lambda grid is empty");
    for (double l : p.options.lambda_grid) {
      if (!(l >= 0) || !std::isfinite(l)) fail(ErrorCode::ConfigError, "lambda values must be >= 0");
    }
    if (p.options.rf_n_trees.empty() || p.options.rf_min_samples_leaf.empty()) {
      fail(ErrorCode::ConfigError, "random forest grid is empty");
    }
    for (auto v : p.options.rf_n_trees) {
      if (v < 1) fail(ErrorCode::ConfigError, "rf_n_trees entries must be >= 1");
    }
    for (auto v : p.options.rf_min_samples_leaf) {
      if (v < 1) fail(ErrorCode::ConfigError, "rf_min_samples_leaf entries must be >= 1");
    }
    if (!(p.options.rf_max_features > 0 && p.options.rf_max_features <= 1)) {
      fail(ErrorCode::ConfigError, "rf_max_features must be in (0, 1]");
    }
    if (c.representations.empty()) {
      fail(ErrorCode::ConfigError, "predict needs at least one representation");
    }
  }
}

std::string canonical_config(const RunConfig& c) {
  std::ostringstream o;
  auto d = [](double v) { return csv::format_double(v); };
  o << "seed=" << c.seed << "\n";
  o << "corpus.generate=" << c.corpus.generate << "\n";
  o << "corpus.path=" << c.corpus.path.generic_string() << "\n";
  o << "corpus.taxonomy=" << (c.corpus.taxonomy ? c.corpus.taxonomy->generic_string() : "") << "\n";
  o << "corpus.templates=" << (c.corpus.templates ? c.corpus.templates->generic_string() : "") << "\n";
  o << "corpus.frames=" << (c.corpus.frames ? c.corpus.frames->generic_string() : "") << "\n";
  for (const auto& r : c.representations) {
    o << "representation=" << r.name << "|" << embed::to_string(r.kind) << "|" << r.dim << "|"
      << r.path.generic_string() << "|" << r.survey_path.generic_string() << "\n";
  }
  o << "probe.enabled=" << c.probe.enabled << "\nprobe.random_dims=";
  for (auto v : c.probe.random_dims) o << v << ",";
  o << "\nprobe.targets=";
  for (auto t : c.probe.targets) o << probe::to_string(t) << ",";
  o << "\nprobe.train=" << d(c.probe.train.l2) << "," << d(c.probe.train.lr) << ","
    << c.probe.train.max_iter << "," << d(c.probe.train.tol) << "\n";
  o << "simdiff.enabled=" << c.simdiff.enabled << "\nsimdiff.jaccard="
    << c.simdiff.options.include_jaccard << "\nsimdiff.hypotheses=";
  for (auto h : c.simdiff.options.hypotheses) o << simdiff::to_string(h) << ",";
  const auto& p = c.predict;
  o << "\npredict.enabled=" << p.enabled << "\npredict.files=" << p.responses.generic_string()
    << "|" << p.questions.generic_string() << "|" << p.scales.generic_string() << "\n";
  o << "predict.id_column=" << p.ingest.id_column << "\npredict.background=";
  for (const auto& b : p.ingest.background) o << b << ",";
  o << "\npredict.missing_codes=";
  for (const auto& m : p.ingest.missing_codes) o << "'" << m << "',";
  o << "\npredict.folds=" << p.options.outer_k << "," << p.options.inner_k << "\npredict.models=";
  for (auto m : p.options.models) o << predict::to_string(m) << ",";
  o << "\npredict.lambda_grid=";
  for (auto l : p.options.lambda_grid) o << d(l) << ",";
  o << "\npredict.lasso=" << d(p.options.lasso.tol) << "," << p.options.lasso.max_sweeps;
  o << "\npredict.rf_n_trees=";
  for (auto v : p.options.rf_n_trees) o << v << ",";
  o << "\npredict.rf_min_samples_leaf=";
  for (auto v : p.options.rf_min_samples_leaf) o << v << ",";
  o << "\npredict.rf=" << d(p.options.rf_max_features) << "," << p.options.rf_max_depth << "\n";
  return o.str();
}

std::string config_hash(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config(config))));
  return buf;
}

}  // namespace sqb::report
