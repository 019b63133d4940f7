#include "tsrep/benchmark.hpp"

#include "tsrep/log.hpp"
#include "tsrep/metrics.hpp"
#include "tsrep/parallel.hpp"

#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

namespace tsrep {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::failed: return "failed";
    case RunStatus::fallback: return "fallback";
  }
  return "?";
}

RunStatus parse_run_status(const std::string& s) {
  if (s == "ok") return RunStatus::ok;
  if (s == "failed") return RunStatus::failed;
  if (s == "fallback") return RunStatus::fallback;
  throw DataError("unknown run status '" + s + "'");
}

ConfigInfo info_of(const ModelConfig& c) {
  return ConfigInfo{c.id, c.model.empty() ? c.id : c.model, c.augmented, c.type, c.zero_shot};
}

RunResult run_cell(const SuiteEntry& entry, const ModelConfig& config, std::size_t jobs) {
  RunResult r;
  r.dataset = entry.name();
  r.model_config = config.id;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<int> pred;
    if (config.dtw_baseline) {
      auto dc = config.dtw;
      dc.jobs = jobs;
      pred = dtw_knn_classify(entry.train, entry.test, dc);
    } else {
      std::shared_ptr<const EmbeddingProvider> provider = config.provider_override;
      if (!provider) provider = make_provider(config.provider);
      const Matrix Xtr = build_feature_matrix(entry.train, *provider, config.aggregation, config.augment, jobs);
      const Matrix Xte = build_feature_matrix(entry.test, *provider, config.aggregation, config.augment, jobs);
      auto cc = config.classifier;
      cc.jobs = jobs;
      const auto head = TrainedClassifier::train(Xtr, entry.train.labels, entry.train.num_classes, cc);
      pred = head.predict(Xte, jobs);
    }
    r.accuracy = accuracy(pred, entry.test.labels);
    r.balanced_accuracy = balanced_accuracy(pred, entry.test.labels);
    r.status = RunStatus::ok;
  } catch (const std::exception& e) {
    r.status = RunStatus::failed;
    r.error = e.what();
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out;
}

nlohmann::ordered_json to_json(const RunResult& r) {
  nlohmann::ordered_json j;
  j["dataset"] = r.dataset;
  j["model_config"] = r.model_config;
  j["status"] = to_string(r.status);
  j["accuracy"] = r.accuracy ? nlohmann::json(*r.accuracy) : nlohmann::json(nullptr);
  j["balanced_accuracy"] = r.balanced_accuracy ? nlohmann::json(*r.balanced_accuracy) : nlohmann::json(nullptr);
  j["wall_time"] = r.wall_time;
  j["error"] = r.error;
  return j;
}

RunResult from_json(const nlohmann::json& j) {
  RunResult r;
  r.dataset = j.at("dataset").get<std::string>();
  r.model_config = j.at("model_config").get<std::string>();
  r.status = parse_run_status(j.at("status").get<std::string>());
  if (!j.at("accuracy").is_null()) r.accuracy = j.at("accuracy").get<double>();
  if (!j.at("balanced_accuracy").is_null()) r.balanced_accuracy = j.at("balanced_accuracy").get<double>();
  r.wall_time = j.value("wall_time", 0.0);
  r.error = j.value("error", "");
  return r;
}

class CellStore {
public:
  explicit CellStore(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_ + "/cells");
  }

  std::optional<RunResult> load(const std::string& config, const std::string& dataset) const {
    if (dir_.empty()) return std::nullopt;
    std::ifstream in(path(config, dataset));
    if (!in) return std::nullopt;
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const std::exception&) {
      return std::nullopt;  // incomplete cell: recompute
    }
  }

  void save(const RunResult& r) const {
    if (dir_.empty()) return;
    const auto p = path(r.model_config, r.dataset);
    const auto tmp = p + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << to_json(r).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, p);
  }

private:
  std::string path(const std::string& config, const std::string& dataset) const {
    return dir_ + "/cells/" + safe_name(config) + "__" + safe_name(dataset) + ".json";
  }
  std::string dir_;
};

}  // namespace

std::string run_result_json(const RunResult& r) { return to_json(r).dump(2); }

void finalize_report(EvaluationReport& report, double alpha) {
  const auto M = static_cast<Eigen::Index>(report.configs.size());
  const auto D = static_cast<Eigen::Index>(report.datasets.size());
  if (report.cells.size() != static_cast<std::size_t>(M * D)) throw DataError("report: cell count mismatch");
  report.alpha = alpha;
  report.accuracy.resize(M, D);
  report.balanced_accuracy.resize(M, D);
  for (Eigen::Index m = 0; m < M; ++m)
    for (Eigen::Index d = 0; d < D; ++d) {
      const auto& c = report.cell(static_cast<std::size_t>(m), static_cast<std::size_t>(d));
      if (c.status == RunStatus::failed || !c.accuracy)
        throw DataError("report: cell " + c.model_config + "/" + c.dataset + " has no score");
      report.accuracy(m, d) = *c.accuracy;
      report.balanced_accuracy(m, d) = c.balanced_accuracy.value_or(kNaN);
    }

  report.group_means = Matrix::Constant(M, 3, kNaN);
  for (Eigen::Index m = 0; m < M; ++m) {
    double sum[3] = {0, 0, 0};
    int count[3] = {0, 0, 0};
    for (Eigen::Index d = 0; d < D; ++d) {
      const int g = report.kinds.empty() || report.kinds[static_cast<std::size_t>(d)] == SuiteKind::univariate ? 0 : 1;
      sum[g] += report.accuracy(m, d);
      ++count[g];
      sum[2] += report.accuracy(m, d);
      ++count[2];
    }
    for (int g = 0; g < 3; ++g)
      if (count[g] > 0) report.group_means(m, g) = sum[g] / count[g];
  }

  if (M == 0 || D == 0) return;
  report.ranks = average_ranks(report.accuracy);
  report.significance_available = M >= 2 && D >= 3;
  if (report.significance_available) {
    auto tests = pairwise_wilcoxon_holm(report.accuracy, alpha);
    report.p_values = std::move(tests.p_values);
    report.reject = std::move(tests.reject);
  } else {
    report.p_values = Matrix::Ones(M, M);
    report.reject = RejectMatrix::Constant(M, M, false);
  }
  report.cd_groups = cd_groups(report.ranks, report.reject);
}

EvaluationReport report_from_scores(const std::vector<std::string>& configs,
                                    const std::vector<std::string>& datasets, const Matrix& scores,
                                    double alpha, const std::vector<SuiteKind>& kinds) {
  if (scores.rows() != static_cast<Eigen::Index>(configs.size()) ||
      scores.cols() != static_cast<Eigen::Index>(datasets.size()))
    throw DataError("report: score matrix shape does not match labels");
  EvaluationReport r;
  for (const auto& c : configs) r.configs.push_back(ConfigInfo{c, c, false, "-", "-"});
  r.datasets = datasets;
  r.kinds = kinds;
  for (std::size_t m = 0; m < configs.size(); ++m)
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      RunResult c;
      c.dataset = datasets[d];
      c.model_config = configs[m];
      c.accuracy = scores(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
      r.cells.push_back(std::move(c));
    }
  finalize_report(r, alpha);
  return r;
}

EvaluationReport run_benchmark(const BenchmarkSuite& suite, const std::vector<ModelConfig>& configs,
                               const BenchmarkOptions& options) {
  {
    std::map<std::string, int> seen;
    for (const auto& c : configs)
      if (++seen[c.id] > 1) throw ConfigError("benchmark: duplicate config id '" + c.id + "'");
  }
  const std::size_t M = configs.size();
  const std::size_t D = suite.datasets.size();
  CellStore store(options.results_dir);

  std::vector<RunResult> cells(M * D);
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < M * D; ++i) {
    const auto& cfg = configs[i / D];
    const auto& entry = suite.datasets[i % D];
    if (auto done = store.load(cfg.id, entry.name())) {
      log_debug("resume: reusing " + cfg.id + " / " + entry.name());
      cells[i] = std::move(*done);
    } else {
      todo.push_back(i);
    }
  }

  // cells run concurrently; each one is single-threaded inside
  parallel_for(todo.size(), options.jobs, [&](std::size_t t) {
    const auto i = todo[t];
    const auto& cfg = configs[i / D];
    const auto& entry = suite.datasets[i % D];
    auto r = run_cell(entry, cfg, 1);
    if (r.status == RunStatus::ok && r.wall_time > options.cell_timeout) {
      r.status = RunStatus::failed;
      r.error = "timeout";
      r.accuracy.reset();
      r.balanced_accuracy.reset();
    }
    if (r.status == RunStatus::failed) log_warn(cfg.id + " failed on " + entry.name() + ": " + r.error);
    store.save(r);
    cells[i] = std::move(r);
  });

  // DTW 1-NN baseline per dataset, computed only where a cell failed
  std::map<std::size_t, RunResult> fallback;
  for (std::size_t i = 0; i < M * D; ++i) {
    if (cells[i].status != RunStatus::failed) continue;
    const auto d = i % D;
    if (!fallback.count(d)) {
      ModelConfig dtw;
      dtw.id = "__fallback_dtw_" + std::to_string(options.fallback.k) + "nn";
      dtw.dtw_baseline = true;
      dtw.dtw = options.fallback;
      auto fb = store.load(dtw.id, suite.datasets[d].name());
      if (!fb) {
        fb = run_cell(suite.datasets[d], dtw, options.jobs);
        store.save(*fb);
      }
      if (fb->status != RunStatus::ok)
        throw DataError("benchmark: DTW fallback failed on " + suite.datasets[d].name() + ": " + fb->error);
      fallback.emplace(d, *fb);
    }
    const auto& fb = fallback.at(d);
    cells[i].accuracy = fb.accuracy;
    cells[i].balanced_accuracy = fb.balanced_accuracy;
    cells[i].status = RunStatus::fallback;
  }

  EvaluationReport report;
  for (const auto& c : configs) report.configs.push_back(info_of(c));
  for (const auto& e : suite.datasets) {
    report.datasets.push_back(e.name());
    report.kinds.push_back(e.kind);
  }
  report.cells = std::move(cells);
  finalize_report(report, options.alpha);
  return report;
}

}  // namespace tsrep
