#include "tsrep/provider.hpp"

#include "tsrep/hidden_state_file.hpp"
#include "tsrep/seed.hpp"

#include <cmath>
#include <random>

namespace tsrep {

void HiddenStates::validate() const {
  if (layers.empty()) throw DataError("hidden states: no layers");
  for (const auto& m : layers) {
    if (m.rows() < 1 || m.cols() < 1) throw DataError("hidden states: empty layer matrix");
    if (!m.allFinite()) throw DataError("hidden states: non-finite activation");
  }
}

namespace {

constexpr double kSnapScale = 1048576.0;  // 2^20
constexpr double kStdFloor = 1e-12;

}  // namespace

RowVector instance_normalize(const Eigen::Ref<const RowVector>& series) {
  const double mean = series.mean();
  RowVector centered = series.array() - mean;
  const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(series.size()));
  const double scale = sd < kStdFloor ? 1.0 : sd;
  RowVector out(series.size());
  for (Eigen::Index t = 0; t < series.size(); ++t)
    out(t) = std::round(centered(t) / scale * kSnapScale) / kSnapScale + 0.0;
  return out;
}

MockProvider::MockProvider(ProviderSpec spec) : spec_(std::move(spec)) {
  if (spec_.layers < 1 || spec_.dim < 1 || spec_.patch_width < 1)
    throw ConfigError("mock provider: layers, dim and patch width must be >= 1");
  std::mt19937_64 rng(derive_seed(spec_.seed, hash_string(spec_.model_id)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Index fan_in = spec_.patch_width;
  for (int l = 0; l < spec_.layers; ++l) {
    Matrix w(spec_.dim, fan_in);
    const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = s * gauss(rng);
    Vector b(spec_.dim);
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = 0.1 * gauss(rng);
    weights_.push_back(std::move(w));
    biases_.push_back(std::move(b));
    fan_in = spec_.dim;
  }
}

HiddenStates MockProvider::extract(const SeriesKey&, const Eigen::Ref<const RowVector>& series) const {
  return extract(series);
}

HiddenStates MockProvider::extract(const Eigen::Ref<const RowVector>& series) const {
  if (series.size() < 2) throw DataError("mock provider: series needs T >= 2");
  const RowVector x = instance_normalize(series);
  const Eigen::Index w = spec_.patch_width;
  const Eigen::Index seq = (x.size() + w - 1) / w;

  Matrix h = Matrix::Zero(seq, w);
  for (Eigen::Index t = 0; t < x.size(); ++t) h(t / w, t % w) = x(t);

  HiddenStates out;
  out.layers.reserve(weights_.size());
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    // causal mixing: each position sees the running mean of its prefix
    Matrix mixed(h.rows(), h.cols());
    RowVector running = RowVector::Zero(h.cols());
    for (Eigen::Index t = 0; t < h.rows(); ++t) {
      running += h.row(t);
      mixed.row(t) = h.row(t) + running / static_cast<double>(t + 1);
    }
    Matrix next = mixed * weights_[l].transpose();
    next.rowwise() += biases_[l].transpose();
    h = next.array().tanh().matrix();
    out.layers.push_back(h);
  }
  return out;
}

HiddenStates mock_extract(const Eigen::Ref<const RowVector>& series, const ProviderSpec& spec) {
  if (spec.kind != ProviderKind::mock) throw ConfigError("mock_extract: provider kind is not mock");
  return MockProvider(spec).extract(series);
}

struct FileProvider::Loaded {
  HiddenStateFile file;
};

FileProvider::FileProvider(ProviderSpec spec) : spec_(std::move(spec)) {
  if (spec_.directory.empty()) throw ConfigError("file provider: directory not set");
}

std::string FileProvider::path_for(const std::string& dataset, Split split, bool differenced) const {
  return spec_.directory + "/" + dataset + "_" + to_string(split) + (differenced ? ".diff" : "") +
         ".ths";
}

std::shared_ptr<const FileProvider::Loaded> FileProvider::load(const std::string& path) const {
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(path); it != cache_.end()) return it->second;
  auto loaded = std::make_shared<Loaded>();
  loaded->file = read_hidden_states(path);
  cache_.emplace(path, loaded);
  return loaded;
}

HiddenStates FileProvider::extract(const SeriesKey& key, const Eigen::Ref<const RowVector>&) const {
  const auto loaded = load(path_for(key.dataset, key.split, key.differenced));
  const auto& f = loaded->file;
  if (key.sample >= f.header.samples) throw DataError("file provider: sample out of range");
  if (key.variate < 0 || static_cast<std::size_t>(key.variate) >= f.header.variates)
    throw DataError("file provider: variate out of range");
  return f.states[key.sample][static_cast<std::size_t>(key.variate)];
}

std::unique_ptr<EmbeddingProvider> make_provider(const ProviderSpec& spec) {
  if (spec.kind == ProviderKind::mock) return std::make_unique<MockProvider>(spec);
  return std::make_unique<FileProvider>(spec);
}

HiddenStates file_extract(const std::string& dataset, Split split, std::size_t sample_index,
                          Eigen::Index variate_index, const ProviderSpec& spec) {
  if (spec.kind != ProviderKind::file) throw ConfigError("file_extract: provider kind is not file");
  FileProvider p(spec);
  return p.extract(SeriesKey{dataset, split, sample_index, variate_index, false}, RowVector{});
}

}  // namespace tsrep
