#include "tsrep/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

namespace tsrep {

namespace {

using nlohmann::json;

void read_provider(const json& j, ProviderSpec& p) {
  if (j.contains("kind")) {
    const auto k = j.at("kind").get<std::string>();
    if (k == "mock") p.kind = ProviderKind::mock;
    else if (k == "file") p.kind = ProviderKind::file;
    else throw ConfigError("provider.kind must be mock or file");
  }
  p.model_id = j.value("model_id", p.model_id);
  p.layers = j.value("layers", p.layers);
  p.dim = j.value("dim", p.dim);
  p.patch_width = j.value("patch_width", p.patch_width);
  p.seed = j.value("seed", p.seed);
  p.directory = j.value("directory", p.directory);
}

void read_aggregation(const json& j, AggregationConfig& a) {
  if (j.contains("sequence")) a.sequence = parse_sequence_pooling(j.at("sequence").get<std::string>());
  if (j.contains("layer")) a.layer = parse_layer_pooling(j.at("layer").get<std::string>());
  if (j.contains("variate")) a.variate = parse_variate_pooling(j.at("variate").get<std::string>());
  a.layer_normalize = j.value("layer_normalize", a.layer_normalize);
}

void read_augment(const json& j, AugmentConfig& a) {
  a.stats = j.value("stats", a.stats);
  a.diff = j.value("diff", a.diff);
  a.k = j.value("k", a.k);
  if (a.k < 1) throw ConfigError("augment.k must be >= 1");
}

void read_classifier(const json& j, ClassifierConfig& c) {
  if (j.contains("kind")) c.kind = parse_classifier_kind(j.at("kind").get<std::string>());
  c.forest.trees = j.value("trees", c.forest.trees);
  c.knn_k = j.value("knn_k", c.knn_k);
  if (j.contains("linear")) {
    const auto& l = j.at("linear");
    c.linear.learning_rate = l.value("learning_rate", c.linear.learning_rate);
    c.linear.weight_decay = l.value("weight_decay", c.linear.weight_decay);
    c.linear.val_fraction = l.value("val_fraction", c.linear.val_fraction);
    c.linear.patience = l.value("patience", c.linear.patience);
    c.linear.max_epochs = l.value("max_epochs", c.linear.max_epochs);
    c.linear.validate();
  }
}

void read_dtw(const json& j, DtwConfig& d) {
  d.k = j.value("k", d.k);
  if (j.contains("mode")) d.mode = parse_dtw_mode(j.at("mode").get<std::string>());
  if (d.k < 1) throw ConfigError("dtw.k must be >= 1");
}

SuiteKind parse_kind(const std::string& s) {
  if (s == "univariate") return SuiteKind::univariate;
  if (s == "multivariate") return SuiteKind::multivariate;
  throw ConfigError("dataset kind must be univariate or multivariate");
}

}  // namespace

ModelConfig default_model(const PipelineConfig& cfg, const std::string& id) {
  ModelConfig m;
  m.id = id;
  m.model = id;
  m.provider = cfg.provider;
  m.aggregation = cfg.aggregation;
  m.augment = cfg.augment;
  m.classifier = cfg.classifier;
  m.classifier.seed = cfg.seed;
  m.dtw = cfg.dtw;
  m.augmented = cfg.augment.stats || cfg.augment.diff;
  return m;
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c;
  try {
    if (j.contains("provider")) read_provider(j.at("provider"), c.provider);
    if (j.contains("aggregation")) read_aggregation(j.at("aggregation"), c.aggregation);
    if (j.contains("augment")) read_augment(j.at("augment"), c.augment);
    if (j.contains("classifier")) read_classifier(j.at("classifier"), c.classifier);
    if (j.contains("dtw")) read_dtw(j.at("dtw"), c.dtw);
    c.max_len = j.value("max_len", c.max_len);
    c.seed = j.value("seed", c.seed);
    c.jobs = j.value("jobs", c.jobs);
    c.alpha = j.value("alpha", c.alpha);
    c.cell_timeout = j.value("cell_timeout", c.cell_timeout);
    c.out = j.value("out", c.out);
    if (j.contains("suite")) {
      const auto& s = j.at("suite");
      c.suite_dir = s.value("dir", std::string{});
      if (s.contains("datasets"))
        for (const auto& d : s.at("datasets")) {
          DatasetRef ref{d.at("name").get<std::string>(), d.at("train").get<std::string>(),
                         d.at("test").get<std::string>(), std::nullopt};
          if (d.contains("kind")) ref.kind = parse_kind(d.at("kind").get<std::string>());
          c.datasets.push_back(std::move(ref));
        }
    }
    if (j.contains("models"))
      for (const auto& mj : j.at("models")) {
        ModelConfig m = default_model(c, mj.at("id").get<std::string>());
        m.model = mj.value("model", m.id);
        m.type = mj.value("type", m.type);
        m.zero_shot = mj.value("zero_shot", m.zero_shot);
        if (mj.value("baseline", std::string{}) == "dtw") m.dtw_baseline = true;
        if (mj.contains("provider")) read_provider(mj.at("provider"), m.provider);
        if (mj.contains("aggregation")) read_aggregation(mj.at("aggregation"), m.aggregation);
        if (mj.contains("augment")) read_augment(mj.at("augment"), m.augment);
        if (mj.contains("classifier")) read_classifier(mj.at("classifier"), m.classifier);
        if (mj.contains("dtw")) read_dtw(mj.at("dtw"), m.dtw);
        m.augmented = mj.value("augmented", m.augment.stats || m.augment.diff);
        c.models.push_back(std::move(m));
      }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return config_from_json(json::parse(in, nullptr, true, true));
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

std::vector<DatasetRef> scan_suite_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("suite directory not found: '" + dir + "'");
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto f = e.path().filename().string();
    const std::string suffix = "_TRAIN.tsd";
    if (f.size() > suffix.size() && f.compare(f.size() - suffix.size(), suffix.size(), suffix) == 0)
      names.insert(f.substr(0, f.size() - suffix.size()));
  }
  std::vector<DatasetRef> out;
  for (const auto& n : names) {
    const auto test = dir + "/" + n + "_TEST.tsd";
    if (!fs::exists(test)) throw DataError("suite: missing test split for '" + n + "'");
    out.push_back(DatasetRef{n, dir + "/" + n + "_TRAIN.tsd", test, std::nullopt});
  }
  return out;
}

BenchmarkSuite load_suite(const PipelineConfig& cfg) {
  std::vector<DatasetRef> refs = cfg.datasets;
  if (!cfg.suite_dir.empty())
    for (auto& r : scan_suite_dir(cfg.suite_dir)) refs.push_back(std::move(r));
  if (refs.empty()) throw ConfigError("no datasets configured (use --suite DIR or suite.datasets)");

  BenchmarkSuite suite;
  for (const auto& r : refs) {
    SuiteEntry e = load_split_pair(r.name, r.train, r.test);
    if (r.kind) e.kind = *r.kind;
    suite.datasets.push_back(std::move(e));
  }
  return filter_by_length(suite, cfg.max_len);
}

}  // namespace tsrep
