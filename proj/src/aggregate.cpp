#include "tsrep/aggregate.hpp"

namespace tsrep {

std::string to_string(SequencePooling s) {
  switch (s) {
    case SequencePooling::mean: return "mean";
    case SequencePooling::max: return "max";
    case SequencePooling::last: return "last";
  }
  return "?";
}

std::string to_string(LayerPooling s) {
  switch (s) {
    case LayerPooling::concat: return "concat";
    case LayerPooling::mean: return "mean";
    case LayerPooling::max: return "max";
    case LayerPooling::last: return "last";
  }
  return "?";
}

std::string to_string(VariatePooling s) {
  switch (s) {
    case VariatePooling::concat: return "concat";
    case VariatePooling::mean: return "mean";
    case VariatePooling::max: return "max";
  }
  return "?";
}

SequencePooling parse_sequence_pooling(const std::string& s) {
  if (s == "mean") return SequencePooling::mean;
  if (s == "max") return SequencePooling::max;
  if (s == "last") return SequencePooling::last;
  throw ConfigError("unknown sequence strategy '" + s + "' (expected mean|max|last)");
}

LayerPooling parse_layer_pooling(const std::string& s) {
  if (s == "concat") return LayerPooling::concat;
  if (s == "mean") return LayerPooling::mean;
  if (s == "max") return LayerPooling::max;
  if (s == "last") return LayerPooling::last;
  throw ConfigError("unknown layer strategy '" + s + "' (expected concat|mean|max|last)");
}

VariatePooling parse_variate_pooling(const std::string& s) {
  if (s == "concat") return VariatePooling::concat;
  if (s == "mean") return VariatePooling::mean;
  if (s == "max") return VariatePooling::max;
  throw ConfigError("unknown variate strategy '" + s + "' (expected concat|mean|max)");
}

namespace {

Vector concat(std::span<const Vector> parts) {
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.size();
  Vector out(total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

template <typename Op>
Vector elementwise(std::span<const Vector> parts, const char* who, Op op) {
  Vector acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].size() != acc.size())
      throw DataError(std::string(who) + ": length mismatch for elementwise pooling");
    acc = op(acc, parts[i]);
  }
  return acc;
}

Vector mean_of(std::span<const Vector> parts, const char* who) {
  Vector s = elementwise(parts, who, [](const Vector& a, const Vector& b) -> Vector { return a + b; });
  return s / static_cast<double>(parts.size());
}

Vector max_of(std::span<const Vector> parts, const char* who) {
  return elementwise(parts, who,
                     [](const Vector& a, const Vector& b) -> Vector { return a.cwiseMax(b); });
}

}  // namespace

Vector aggregate_layers(std::span<const Vector> per_layer, LayerPooling strategy, bool normalize) {
  if (per_layer.empty()) throw DataError("aggregate_layers: no layers");
  std::vector<Vector> normed;
  if (normalize) {
    normed.reserve(per_layer.size());
    for (const auto& v : per_layer) normed.push_back(normalize_layer_vector(v));
    per_layer = normed;
  }
  switch (strategy) {
    case LayerPooling::concat: return concat(per_layer);
    case LayerPooling::mean: return mean_of(per_layer, "aggregate_layers");
    case LayerPooling::max: return max_of(per_layer, "aggregate_layers");
    case LayerPooling::last: return per_layer.back();
  }
  throw ConfigError("aggregate_layers: unknown strategy");
}

Vector aggregate_variates(std::span<const Vector> per_variate, VariatePooling strategy) {
  if (per_variate.empty()) throw DataError("aggregate_variates: no variates");
  switch (strategy) {
    case VariatePooling::concat: return concat(per_variate);
    case VariatePooling::mean: return mean_of(per_variate, "aggregate_variates");
    case VariatePooling::max: return max_of(per_variate, "aggregate_variates");
  }
  throw ConfigError("aggregate_variates: unknown strategy");
}

Vector pool_hidden_states(const HiddenStates& states, const AggregationConfig& config) {
  std::vector<Vector> per_layer;
  per_layer.reserve(states.layers.size());
  for (const auto& m : states.layers) per_layer.push_back(aggregate_sequence(m, config.sequence));
  return aggregate_layers(per_layer, config.layer, config.layer_normalize);
}

Vector embed_sample(const TimeSeries& series, const EmbeddingProvider& provider,
                    const AggregationConfig& config, const SeriesKey& key) {
  std::vector<Vector> per_variate;
  per_variate.reserve(static_cast<std::size_t>(series.variates()));
  for (Eigen::Index v = 0; v < series.variates(); ++v) {
    SeriesKey k = key;
    k.variate = v;
    const RowVector row = series.variate(v);
    per_variate.push_back(pool_hidden_states(provider.extract(k, row), config));
  }
  Vector z = aggregate_variates(per_variate, config.variate);
  if (!z.allFinite()) throw DataError("embed_sample: non-finite embedding");
  return z;
}

}  // namespace tsrep
