#pragma once

#include "tsrep/benchmark.hpp"

#include <json.hpp>

#include <string>

namespace tsrep {

struct DatasetRef {
  std::string name;
  std::string train;
  std::string test;
  std::optional<SuiteKind> kind;  // inferred from the variate count when absent
};

/// Everything a pipeline run needs. Loaded from JSON; CLI flags override.
struct PipelineConfig {
  ProviderSpec provider;
  AggregationConfig aggregation;
  AugmentConfig augment;
  ClassifierConfig classifier;
  DtwConfig dtw;

  std::string suite_dir;  // pairs <name>_TRAIN.tsd / <name>_TEST.tsd
  std::vector<DatasetRef> datasets;
  std::size_t max_len = 0;

  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  double alpha = 0.1;
  double cell_timeout = 300.0;
  std::string out;

  /// Benchmark matrix; entries inherit the top-level settings above.
  std::vector<ModelConfig> models;
};

PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::string& path);

/// Model entry built from the top-level settings.
ModelConfig default_model(const PipelineConfig& cfg, const std::string& id = "model");

/// Loads the configured datasets (explicit list first, then suite_dir scan),
/// applying the max_len filter.
BenchmarkSuite load_suite(const PipelineConfig& cfg);

/// Lists <name>_TRAIN.tsd / <name>_TEST.tsd pairs in a directory, sorted by name.
std::vector<DatasetRef> scan_suite_dir(const std::string& dir);

}  // namespace tsrep
