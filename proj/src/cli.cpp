#include "tsrep/cli.hpp"

#include "tsrep/benchmark.hpp"
#include "tsrep/config.hpp"
#include "tsrep/log.hpp"
#include "tsrep/pca.hpp"
#include "tsrep/report.hpp"
#include "tsrep/synthetic.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace tsrep {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << text;
    if (!out) throw DataError("write failed for '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string stem_of(const std::string& path) {
  auto s = std::filesystem::path(path).stem().string();
  for (const std::string suffix : {"_TRAIN", "_TEST"})
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0)
      s.resize(s.size() - suffix.size());
  return s;
}

// Options shared by the pipeline subcommands. Unset options leave the
// config file (or defaults) untouched.
struct PipelineFlags {
  std::optional<std::string> config;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_len;
  std::optional<double> alpha;
  std::optional<std::string> out;
  std::optional<std::string> provider;
  std::optional<std::string> provider_dir;
  std::optional<std::string> model_id;
  std::optional<std::string> seq;
  std::optional<std::string> layer;
  std::optional<std::string> variate;
  bool stats = false;
  bool diff = false;
  bool no_layer_norm = false;
  std::optional<int> k;
  std::optional<std::string> classifier;
  std::optional<int> trees;
  std::optional<std::string> model;
  std::optional<std::string> suite;
  bool demo = false;
  std::optional<double> timeout;
};

void add_pipeline_flags(CLI::App* app, PipelineFlags& f) {
  app->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--max-len", f.max_len, "skip datasets with longer series (0 = no limit)");
  app->add_option("--alpha", f.alpha, "significance level");
  app->add_option("--out", f.out, "output path");
  app->add_option("--provider", f.provider, "embedding provider")->check(CLI::IsMember({"mock", "file"}));
  app->add_option("--provider-dir", f.provider_dir, "hidden-state directory for --provider file");
  app->add_option("--model-id", f.model_id, "provider model id");
  app->add_option("--seq", f.seq, "sequence pooling")->check(CLI::IsMember({"mean", "max", "last"}));
  app->add_option("--layer", f.layer, "layer pooling")->check(CLI::IsMember({"concat", "mean", "max", "last"}));
  app->add_option("--variate", f.variate, "variate pooling")->check(CLI::IsMember({"concat", "mean", "max"}));
  app->add_flag("--stats", f.stats, "append patch statistics");
  app->add_flag("--diff", f.diff, "append differenced-series embedding");
  app->add_flag("--no-layer-norm", f.no_layer_norm, "skip per-layer standardization");
  app->add_option("--k", f.k, "patch count (DTW neighbours with --model dtw)")->check(CLI::PositiveNumber);
  app->add_option("--classifier", f.classifier, "classification head")
      ->check(CLI::IsMember({"forest", "linear", "knn"}));
  app->add_option("--trees", f.trees, "forest size")->check(CLI::PositiveNumber);
  app->add_option("--model", f.model, "baseline model")->check(CLI::IsMember({"dtw"}));
}

void add_suite_flags(CLI::App* app, PipelineFlags& f) {
  app->add_option("--suite", f.suite, "directory of <name>_TRAIN.tsd/<name>_TEST.tsd pairs");
  app->add_flag("--demo", f.demo, "use the built-in synthetic suite");
  app->add_option("--timeout", f.timeout, "per-cell time limit in seconds");
}

bool dtw_mode(const PipelineFlags& f) { return f.model && *f.model == "dtw"; }

void apply_model_flags(const PipelineFlags& f, ModelConfig& m, std::uint64_t seed) {
  if (f.provider) m.provider.kind = *f.provider == "file" ? ProviderKind::file : ProviderKind::mock;
  if (f.provider_dir) m.provider.directory = *f.provider_dir;
  if (f.model_id) m.provider.model_id = *f.model_id;
  if (f.seq) m.aggregation.sequence = parse_sequence_pooling(*f.seq);
  if (f.layer) m.aggregation.layer = parse_layer_pooling(*f.layer);
  if (f.variate) m.aggregation.variate = parse_variate_pooling(*f.variate);
  if (f.no_layer_norm) m.aggregation.layer_normalize = false;
  if (f.stats) m.augment.stats = true;
  if (f.diff) m.augment.diff = true;
  if (f.k) (dtw_mode(f) ? m.dtw.k : m.augment.k) = *f.k;
  if (f.classifier) m.classifier.kind = parse_classifier_kind(*f.classifier);
  if (f.trees) m.classifier.forest.trees = *f.trees;
  if (f.seed) m.classifier.seed = seed;
  if (f.stats || f.diff) m.augmented = true;
}

PipelineConfig resolve(const PipelineFlags& f) {
  PipelineConfig c = f.config ? load_config(*f.config) : PipelineConfig{};
  if (f.jobs) c.jobs = *f.jobs;
  if (f.seed) c.seed = *f.seed;
  if (f.max_len) c.max_len = *f.max_len;
  if (f.alpha) {
    if (!(*f.alpha > 0.0 && *f.alpha < 1.0)) throw ConfigError("--alpha must be in (0, 1)");
    c.alpha = *f.alpha;
  }
  if (f.out) c.out = *f.out;
  if (f.suite) {
    c.suite_dir = *f.suite;
    c.datasets.clear();
  }
  if (f.timeout) c.cell_timeout = *f.timeout;

  ModelConfig base = default_model(c);
  apply_model_flags(f, base, c.seed);
  c.provider = base.provider;
  c.aggregation = base.aggregation;
  c.augment = base.augment;
  c.classifier = base.classifier;
  c.classifier.seed = c.seed;
  c.dtw = base.dtw;
  for (auto& m : c.models) apply_model_flags(f, m, c.seed);

  if (dtw_mode(f)) {
    ModelConfig m = default_model(c, "dtw_" + std::to_string(c.dtw.k) + "nn");
    m.model = "DTW";
    m.dtw_baseline = true;
    c.models = {std::move(m)};
  }
  return c;
}

std::vector<ModelConfig> models_of(const PipelineConfig& c) {
  if (!c.models.empty()) return c.models;
  return {default_model(c, c.provider.model_id)};
}

BenchmarkSuite suite_of(const PipelineConfig& c, const PipelineFlags& f, bool demo_default) {
  if (f.demo || (demo_default && c.suite_dir.empty() && c.datasets.empty()))
    return filter_by_length(demo_suite(32, c.seed), c.max_len);
  return load_suite(c);
}

BenchmarkOptions options_of(const PipelineConfig& c) {
  BenchmarkOptions o;
  o.cell_timeout = c.cell_timeout;
  o.jobs = c.jobs;
  o.alpha = c.alpha;
  return o;
}

// ---- subcommands ---------------------------------------------------------

struct GenToyArgs {
  std::size_t n = 1024;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_toy(const GenToyArgs& a) {
  const auto toy = generate_sine_toy(a.n, a.seed);
  write_text(a.out, format_dataset(toy.dataset));
  std::string side = "index,baseline,label\n";
  for (std::size_t i = 0; i < toy.baselines.size(); ++i)
    side += std::to_string(i) + ',' + num(toy.baselines[i]) + ',' + std::to_string(toy.dataset.labels[i]) + '\n';
  if (a.out != "-") write_text(a.out + ".baselines.csv", side);
  return kExitOk;
}

struct GenBlobsArgs {
  std::size_t n = 100;
  std::size_t dims = 2;
  double separation = 10.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_blobs(const GenBlobsArgs& a) {
  const auto b = generate_blobs(a.n, a.dims, a.separation, a.seed);
  LabeledDataset ds;
  ds.name = "blobs";
  ds.num_classes = 2;
  for (Eigen::Index i = 0; i < b.features.rows(); ++i) {
    ds.samples.emplace_back(Matrix(b.features.row(i)));
    ds.labels.push_back(b.labels[static_cast<std::size_t>(i)]);
  }
  write_text(a.out, format_dataset(ds));
  return kExitOk;
}

std::string embeddings_csv(const Matrix& X, std::span<const int> labels) {
  std::string out = "label";
  for (Eigen::Index j = 0; j < X.cols(); ++j) out += ",f" + std::to_string(j);
  out += '\n';
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out += std::to_string(labels[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < X.cols(); ++j) out += ',' + num(X(i, j));
    out += '\n';
  }
  return out;
}

struct EmbedArgs {
  std::string in;
  std::string split = "train";
  std::optional<std::string> name;
};

int run_embed(const EmbedArgs& a, const PipelineFlags& f) {
  const auto c = resolve(f);
  auto ds = load_dataset(a.in, parse_split(a.split));
  ds.name = a.name ? *a.name : stem_of(a.in);
  const auto provider = make_provider(c.provider);
  const Matrix X = build_feature_matrix(ds, *provider, c.aggregation, c.augment, 1);
  write_text(c.out, embeddings_csv(X, ds.labels));
  return kExitOk;
}

struct TrainEvalArgs {
  std::string train;
  std::string test;
  std::optional<std::string> name;
};

int run_train_eval(const TrainEvalArgs& a, const PipelineFlags& f) {
  const auto c = resolve(f);
  const auto name = a.name ? *a.name : stem_of(a.train);
  const auto entry = load_split_pair(name, a.train, a.test);
  const auto models = models_of(c);
  if (models.size() != 1) throw ConfigError("train-eval runs exactly one model config");
  const auto r = run_cell(entry, models.front(), 1);
  write_text(c.out, run_result_json(r) + '\n');
  if (r.status == RunStatus::failed) {
    log_error(name + ": " + r.error);
    return kExitData;
  }
  return kExitOk;
}

int run_benchmark_cmd(const PipelineFlags& f) {
  const auto c = resolve(f);
  if (c.out.empty()) throw ConfigError("benchmark needs --out DIR");
  const auto suite = suite_of(c, f, false);
  if (suite.datasets.empty()) throw DataError("no dataset left after filtering");
  auto opts = options_of(c);
  opts.results_dir = c.out;
  std::filesystem::create_directories(c.out);
  const auto report = run_benchmark(suite, models_of(c), opts);
  const auto md = render_report(report, ReportStyle::markdown);
  write_text(c.out + "/report.md", md);
  write_text(c.out + "/report.csv", render_report(report, ReportStyle::csv));
  write_text(c.out + "/report.cdplot", render_report(report, ReportStyle::cdplot));
  std::cout << md;
  return kExitOk;
}

struct AblateArgs {
  std::string grid;
};

std::vector<ModelConfig> ablation_grid(const std::string& grid, const ModelConfig& base) {
  std::vector<ModelConfig> out;
  auto push = [&](ModelConfig m) {
    m.id = to_string(m.aggregation.sequence) + "-" + to_string(m.aggregation.layer) + "-" +
           to_string(m.aggregation.variate) + (m.augment.stats ? "-stats" : "") +
           (m.augment.diff ? "-diff" : "") + (m.augment.stats ? "-k" + std::to_string(m.augment.k) : "");
    m.model = m.id;
    m.augmented = m.augment.stats || m.augment.diff;
    out.push_back(std::move(m));
  };
  if (grid == "aggregation") {
    for (auto s : {SequencePooling::mean, SequencePooling::max, SequencePooling::last})
      for (auto l : {LayerPooling::concat, LayerPooling::mean, LayerPooling::max, LayerPooling::last}) {
        auto m = base;
        m.aggregation.sequence = s;
        m.aggregation.layer = l;
        push(m);
      }
  } else if (grid == "variate") {
    for (auto v : {VariatePooling::concat, VariatePooling::mean, VariatePooling::max}) {
      auto m = base;
      m.aggregation.variate = v;
      push(m);
    }
  } else if (grid == "augmentation") {
    for (int bits = 0; bits < 4; ++bits) {
      auto m = base;
      m.augment.stats = bits & 1;
      m.augment.diff = bits & 2;
      push(m);
    }
  } else if (grid == "patches") {
    for (int k : {1, 2, 4, 8, 16, 32}) {
      auto m = base;
      m.augment.stats = true;
      m.augment.k = k;
      push(m);
    }
  } else {
    throw ConfigError("unknown grid '" + grid + "'");
  }
  return out;
}

int run_ablate(const AblateArgs& a, const PipelineFlags& f) {
  const auto c = resolve(f);
  const auto suite = suite_of(c, f, true);
  if (suite.datasets.empty()) throw DataError("no dataset left after filtering");
  const auto configs = ablation_grid(a.grid, default_model(c, "base"));
  const auto report = run_benchmark(suite, configs, options_of(c));

  std::string out = "config,sequence,layer,variate,stats,diff,k,univariate,multivariate,overall,mean_rank,fallbacks\n";
  for (std::size_t m = 0; m < configs.size(); ++m) {
    const auto& mc = configs[m];
    const auto i = static_cast<Eigen::Index>(m);
    int fallbacks = 0;
    for (std::size_t d = 0; d < report.datasets.size(); ++d)
      fallbacks += report.cell(m, d).status == RunStatus::fallback;
    out += mc.id + ',' + to_string(mc.aggregation.sequence) + ',' + to_string(mc.aggregation.layer) + ',' +
           to_string(mc.aggregation.variate) + ',' + (mc.augment.stats ? "1" : "0") + ',' +
           (mc.augment.diff ? "1" : "0") + ',' + std::to_string(mc.augment.k) + ',' +
           num(report.group_means(i, 0)) + ',' + num(report.group_means(i, 1)) + ',' +
           num(report.group_means(i, 2)) + ',' + num(report.ranks(i)) + ',' + std::to_string(fallbacks) + '\n';
  }
  write_text(c.out, out);
  return kExitOk;
}

struct AnalyzeArgs {
  std::string in;
  double alpha = 0.1;
  std::optional<std::string> crps;
  std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw ConfigError("--alpha must be in (0, 1)");
  const auto r = read_scores_csv(a.in, a.alpha);
  std::ostringstream out;
  out << "configs," << r.configs.size() << "\ndatasets," << r.datasets.size() << "\nalpha," << num(a.alpha) << '\n';
  for (int m : rank_order(r.ranks))
    out << "rank," << r.configs[static_cast<std::size_t>(m)].id << ',' << num(r.ranks(m)) << '\n';
  if (r.significance_available) {
    for (std::size_t i = 0; i < r.configs.size(); ++i)
      for (std::size_t j = i + 1; j < r.configs.size(); ++j) {
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        out << "pair," << r.configs[i].id << ',' << r.configs[j].id << ',' << num(r.p_values(ii, jj)) << ','
            << (r.reject(ii, jj) ? "reject" : "accept") << '\n';
      }
  } else {
    out << "# significance tests need at least 3 datasets and 2 configs\n";
  }
  for (const auto& g : r.cd_groups) {
    out << "cd_group,";
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? ";" : "") << r.configs[static_cast<std::size_t>(g[i])].id;
    out << '\n';
  }
  if (a.crps) {
    std::vector<double> acc, crps;
    for (const auto& [id, v] : read_metric_csv(*a.crps)) {
      for (std::size_t m = 0; m < r.configs.size(); ++m)
        if (r.configs[m].id == id) {
          acc.push_back(r.accuracy.row(static_cast<Eigen::Index>(m)).mean());
          crps.push_back(v);
        }
    }
    if (acc.size() < 3) throw DataError("correlation needs at least 3 configs present in both files");
    const auto corr = score_correlation(acc, crps);
    out << "correlation,n=" << acc.size() << ",pearson=" << num(corr.pearson) << ",spearman=" << num(corr.spearman)
        << '\n';
  }
  write_text(a.out, out.str());
  return kExitOk;
}

struct PcaArgs {
  std::string in;
  int dims = 2;
  std::string out;
};

int run_pca(const PcaArgs& a) {
  std::ifstream in(a.in);
  if (!in) throw DataError("cannot open '" + a.in + "'");
  std::string line;
  std::getline(in, line);
  std::vector<int> labels;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> vals;
    bool first = true;
    while (std::getline(ss, tok, ',')) {
      double v = 0;
      const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw DataError(a.in + ":" + std::to_string(lineno) + ": cannot parse '" + tok + "'");
      if (first) labels.push_back(static_cast<int>(v));
      else vals.push_back(v);
      first = false;
    }
    if (!rows.empty() && vals.size() != rows.front().size())
      throw DataError(a.in + ":" + std::to_string(lineno) + ": row width differs");
    rows.push_back(std::move(vals));
  }
  if (rows.empty() || rows.front().empty()) throw DataError(a.in + ": no embeddings");
  Matrix X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = rows[i][j];

  const auto res = pca(X, a.dims);
  std::string out = "label";
  for (int d = 0; d < a.dims; ++d) out += ",pc" + std::to_string(d + 1);
  out += '\n';
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out += std::to_string(labels[static_cast<std::size_t>(i)]);
    for (int d = 0; d < a.dims; ++d) out += ',' + num(res.projection(i, d));
    out += '\n';
  }
  write_text(a.out, out);
  return kExitOk;
}

struct ReportArgs {
  std::string in;
  std::string style = "markdown";
  double alpha = 0.1;
  std::string out;
};

int run_report(const ReportArgs& a) {
  const auto style = parse_report_style(a.style);
  const auto r = read_scores_csv(a.in, a.alpha);
  write_text(a.out, style == ReportStyle::latex ? render_table_latex(table_rows(r)) : render_report(r, style));
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  init_logging();
  CLI::App app{"Time-series classification from frozen forecasting-model embeddings"};
  app.name("tsrep");
  app.require_subcommand(1);

  GenToyArgs toy;
  auto* gen_toy = app.add_subcommand("gen-toy", "baseline-shifted sine dataset");
  gen_toy->add_option("--n", toy.n, "samples")->check(CLI::PositiveNumber);
  gen_toy->add_option("--seed", toy.seed, "random seed");
  gen_toy->add_option("--out", toy.out, "dataset file")->required();

  GenBlobsArgs blobs;
  auto* gen_blobs = app.add_subcommand("gen-blobs", "two Gaussian clusters as a dataset file");
  gen_blobs->add_option("--n", blobs.n, "samples per class")->check(CLI::PositiveNumber);
  gen_blobs->add_option("--dims", blobs.dims, "feature count")->check(CLI::PositiveNumber);
  gen_blobs->add_option("--separation", blobs.separation, "distance between centres")->check(CLI::NonNegativeNumber);
  gen_blobs->add_option("--seed", blobs.seed, "random seed");
  gen_blobs->add_option("--out", blobs.out, "dataset file")->required();

  PipelineFlags flags;

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "dataset to embedding CSV");
  add_pipeline_flags(embed_cmd, flags);
  embed_cmd->add_option("--in", embed.in, "dataset file")->required()->check(CLI::ExistingFile);
  embed_cmd->add_option("--split", embed.split, "split name for file providers")
      ->check(CLI::IsMember({"train", "test"}));
  embed_cmd->add_option("--name", embed.name, "dataset name for file providers");

  TrainEvalArgs te;
  auto* te_cmd = app.add_subcommand("train-eval", "one config on one dataset");
  add_pipeline_flags(te_cmd, flags);
  te_cmd->add_option("--train", te.train, "training split")->required()->check(CLI::ExistingFile);
  te_cmd->add_option("--test", te.test, "test split")->required()->check(CLI::ExistingFile);
  te_cmd->add_option("--name", te.name, "dataset name");

  auto* bench = app.add_subcommand("benchmark", "every config on every dataset");
  add_pipeline_flags(bench, flags);
  add_suite_flags(bench, flags);

  AblateArgs ablate;
  auto* ablate_cmd = app.add_subcommand("ablate", "strategy grid over a suite");
  add_pipeline_flags(ablate_cmd, flags);
  add_suite_flags(ablate_cmd, flags);
  ablate_cmd->add_option("--grid", ablate.grid, "grid")
      ->required()
      ->check(CLI::IsMember({"aggregation", "variate", "augmentation", "patches"}));

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "ranks, Wilcoxon/Holm and CD groups from a score CSV");
  an_cmd->add_option("--in", an.in, "score CSV")->required()->check(CLI::ExistingFile);
  an_cmd->add_option("--alpha", an.alpha, "significance level");
  an_cmd->add_option("--crps", an.crps, "model_id,crps CSV")->check(CLI::ExistingFile);
  an_cmd->add_option("--out", an.out, "output file");

  PcaArgs pc;
  auto* pca_cmd = app.add_subcommand("pca", "embedding CSV to principal-component CSV");
  pca_cmd->add_option("--in", pc.in, "embedding CSV")->required()->check(CLI::ExistingFile);
  pca_cmd->add_option("--dims", pc.dims, "components")->check(CLI::PositiveNumber);
  pca_cmd->add_option("--out", pc.out, "output file");

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "render tables from a score CSV");
  rep_cmd->add_option("--in", rep.in, "score CSV")->required()->check(CLI::ExistingFile);
  rep_cmd->add_option("--style", rep.style, "markdown|csv|cd-plot-data|latex");
  rep_cmd->add_option("--alpha", rep.alpha, "significance level");
  rep_cmd->add_option("--out", rep.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_toy) return run_gen_toy(toy);
    if (*gen_blobs) return run_gen_blobs(blobs);
    if (*embed_cmd) return run_embed(embed, flags);
    if (*te_cmd) return run_train_eval(te, flags);
    if (*bench) return run_benchmark_cmd(flags);
    if (*ablate_cmd) return run_ablate(ablate, flags);
    if (*an_cmd) return run_analyze(an);
    if (*pca_cmd) return run_pca(pc);
    if (*rep_cmd) return run_report(rep);
  } catch (const ConfigError& e) {
    std::cerr << "tsrep: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "tsrep: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "tsrep: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace tsrep
