#pragma once

#include "tsrep/augment.hpp"
#include "tsrep/classifier.hpp"
#include "tsrep/dtw.hpp"
#include "tsrep/rank_stats.hpp"

#include <memory>
#include <optional>
#include <string>

namespace tsrep {

/// One row of the benchmark matrix: either an embedding pipeline
/// (provider -> aggregation -> augmentation -> head) or the DTW baseline.
struct ModelConfig {
  std::string id;
  // Table layout: rows group configs by `model`; `augmented` picks the column pair.
  std::string model;
  bool augmented = false;
  std::string type = "-";
  std::string zero_shot = "-";

  bool dtw_baseline = false;
  DtwConfig dtw;

  ProviderSpec provider;
  AggregationConfig aggregation;
  AugmentConfig augment;
  ClassifierConfig classifier;

  /// Used instead of building a provider from `provider` when set.
  std::shared_ptr<const EmbeddingProvider> provider_override;
};

enum class RunStatus { ok, failed, fallback };
std::string to_string(RunStatus s);
RunStatus parse_run_status(const std::string& s);

struct RunResult {
  std::string dataset;
  std::string model_config;
  std::optional<double> accuracy;
  std::optional<double> balanced_accuracy;
  RunStatus status = RunStatus::ok;
  double wall_time = 0.0;
  std::string error;
};

/// Trains on entry.train, scores on entry.test. Exceptions are captured as a
/// failed result.
RunResult run_cell(const SuiteEntry& entry, const ModelConfig& config, std::size_t jobs = 1);

std::string run_result_json(const RunResult& r);

struct BenchmarkOptions {
  DtwConfig fallback{1, DtwMode::dependent, 1};
  double cell_timeout = 300.0;  // seconds; slower cells count as failed
  std::size_t jobs = 1;
  double alpha = 0.1;
  std::string results_dir;  // cell files for resume; empty disables
};

enum class ScoreGroup { univariate = 0, multivariate = 1, overall = 2 };

struct ConfigInfo {
  std::string id;
  std::string model;
  bool augmented = false;
  std::string type = "-";
  std::string zero_shot = "-";
};

struct EvaluationReport {
  std::vector<ConfigInfo> configs;
  std::vector<std::string> datasets;
  std::vector<SuiteKind> kinds;
  std::vector<RunResult> cells;  // configs x datasets, row-major

  Matrix accuracy;           // configs x datasets, after fallback substitution
  Matrix balanced_accuracy;
  Matrix group_means;        // configs x 3 (univariate, multivariate, overall); NaN when a group is empty
  Vector ranks;
  Matrix p_values;
  RejectMatrix reject;
  std::vector<CdGroup> cd_groups;
  double alpha = 0.1;
  bool significance_available = false;  // needs >= 3 datasets and >= 2 configs

  const RunResult& cell(std::size_t config, std::size_t dataset) const {
    return cells[config * datasets.size() + dataset];
  }
};

/// Fills the derived fields (scores, group means, ranks, tests, CD groups)
/// from `cells`. Cells must be complete (no failed cell left).
void finalize_report(EvaluationReport& report, double alpha);

/// Report from a plain configs x datasets score matrix (no cell metadata).
EvaluationReport report_from_scores(const std::vector<std::string>& configs,
                                    const std::vector<std::string>& datasets, const Matrix& scores,
                                    double alpha, const std::vector<SuiteKind>& kinds = {});

/// Runs every (config, dataset) cell, replaces failed cells by the DTW 1-NN
/// baseline scores for that dataset (status fallback), and assembles the report.
EvaluationReport run_benchmark(const BenchmarkSuite& suite, const std::vector<ModelConfig>& configs,
                               const BenchmarkOptions& options);

ConfigInfo info_of(const ModelConfig& c);

}  // namespace tsrep
