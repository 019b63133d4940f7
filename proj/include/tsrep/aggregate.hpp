#pragma once

#include "tsrep/core.hpp"
#include "tsrep/provider.hpp"

#include <cmath>
#include <span>
#include <string>

namespace tsrep {

enum class SequencePooling { mean, max, last };
enum class LayerPooling { concat, mean, max, last };
enum class VariatePooling { concat, mean, max };

struct AggregationConfig {
  SequencePooling sequence = SequencePooling::mean;
  LayerPooling layer = LayerPooling::concat;
  VariatePooling variate = VariatePooling::concat;
  bool layer_normalize = true;
};

std::string to_string(SequencePooling s);
std::string to_string(LayerPooling s);
std::string to_string(VariatePooling s);
SequencePooling parse_sequence_pooling(const std::string& s);
LayerPooling parse_layer_pooling(const std::string& s);
VariatePooling parse_variate_pooling(const std::string& s);

/// Pools a seq' x D activation matrix down the time axis.
template <typename Derived>
Vector aggregate_sequence(const Eigen::MatrixBase<Derived>& layer, SequencePooling strategy) {
  if (layer.rows() < 1 || layer.cols() < 1) throw DataError("aggregate_sequence: empty matrix");
  switch (strategy) {
    case SequencePooling::mean:
      return layer.colwise().mean().transpose();
    case SequencePooling::max:
      return layer.colwise().maxCoeff().transpose();
    case SequencePooling::last:
      return layer.row(layer.rows() - 1).transpose();
  }
  throw ConfigError("aggregate_sequence: unknown strategy");
}

/// z-normalizes a vector over its own components (population std); a
/// (near-)constant vector maps to zeros.
template <typename Derived>
Vector normalize_layer_vector(const Eigen::MatrixBase<Derived>& v) {
  if (v.size() < 1) throw DataError("normalize_layer_vector: empty vector");
  const double mean = v.mean();
  Vector centered = v.array() - mean;
  const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(v.size()));
  if (sd < 1e-12) return Vector::Zero(v.size());
  return centered / sd;
}

Vector aggregate_layers(std::span<const Vector> per_layer, LayerPooling strategy, bool normalize);
Vector aggregate_variates(std::span<const Vector> per_variate, VariatePooling strategy);

/// Hidden states of one variate -> per-variate embedding.
Vector pool_hidden_states(const HiddenStates& states, const AggregationConfig& config);

/// Embeds every variate independently and combines them.
Vector embed_sample(const TimeSeries& series, const EmbeddingProvider& provider,
                    const AggregationConfig& config, const SeriesKey& key = {});

}  // namespace tsrep
