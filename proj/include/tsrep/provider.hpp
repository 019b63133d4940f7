#pragma once

#include "tsrep/core.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

namespace tsrep {

/// Per-layer activations of one univariate pass; layer l is seq'_l x D_l.
struct HiddenStates {
  std::vector<Matrix> layers;

  std::size_t num_layers() const { return layers.size(); }
  void validate() const;
};

enum class ProviderKind { mock, file };

struct ProviderSpec {
  ProviderKind kind = ProviderKind::mock;
  std::string model_id = "mock";
  // mock
  int layers = 4;
  int dim = 32;
  int patch_width = 16;
  std::uint64_t seed = 0;
  // file
  std::string directory;
};

/// Identifies which univariate input is being embedded. The mock provider
/// ignores it; the file provider uses it to locate stored activations.
struct SeriesKey {
  std::string dataset;
  Split split = Split::train;
  std::size_t sample = 0;
  Eigen::Index variate = 0;
  bool differenced = false;
};

class EmbeddingProvider {
public:
  virtual ~EmbeddingProvider() = default;
  virtual HiddenStates extract(const SeriesKey& key,
                               const Eigen::Ref<const RowVector>& series) const = 0;
  virtual const std::string& model_id() const = 0;
};

/// Deterministic stand-in for a frozen forecasting model: instance
/// normalization, non-overlapping patching, then a stack of seeded tanh layers
/// with causal mean mixing.
class MockProvider final : public EmbeddingProvider {
public:
  explicit MockProvider(ProviderSpec spec);

  HiddenStates extract(const SeriesKey& key,
                       const Eigen::Ref<const RowVector>& series) const override;
  HiddenStates extract(const Eigen::Ref<const RowVector>& series) const;
  const std::string& model_id() const override { return spec_.model_id; }
  const ProviderSpec& spec() const { return spec_; }

private:
  ProviderSpec spec_;
  std::vector<Matrix> weights_;  // D x fan_in
  std::vector<Vector> biases_;
};

/// Instance-normalizes a series and snaps it to a fixed 2^-20 grid so that
/// positive affine rescalings of the input produce bit-identical output.
RowVector instance_normalize(const Eigen::Ref<const RowVector>& series);

/// Serves activations from hidden-state interchange files
/// `<directory>/<dataset>_<split>[.diff].ths`.
class FileProvider final : public EmbeddingProvider {
public:
  explicit FileProvider(ProviderSpec spec);

  HiddenStates extract(const SeriesKey& key,
                       const Eigen::Ref<const RowVector>& series) const override;
  const std::string& model_id() const override { return spec_.model_id; }

  std::string path_for(const std::string& dataset, Split split, bool differenced) const;

private:
  struct Loaded;
  std::shared_ptr<const Loaded> load(const std::string& path) const;

  ProviderSpec spec_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const Loaded>> cache_;
};

std::unique_ptr<EmbeddingProvider> make_provider(const ProviderSpec& spec);

HiddenStates mock_extract(const Eigen::Ref<const RowVector>& series, const ProviderSpec& spec);
HiddenStates file_extract(const std::string& dataset, Split split, std::size_t sample_index,
                          Eigen::Index variate_index, const ProviderSpec& spec);

}  // namespace tsrep
