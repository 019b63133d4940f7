#pragma once

#include "tsrep/aggregate.hpp"

#include <algorithm>

namespace tsrep {

struct AugmentConfig {
  bool stats = false;
  bool diff = false;
  int k = 8;
};

/// Per-chunk (mean, population std, min, max) of one variate over k
/// contiguous chunks [floor(iT/k), floor((i+1)T/k)). Chunks left empty when
/// T < k repeat the statistics of the nearest preceding non-empty chunk (or
/// the first non-empty chunk when none precedes). Output length 4k.
template <typename Derived>
Vector patch_statistics_row(const Eigen::MatrixBase<Derived>& row, int k) {
  if (k < 1) throw ConfigError("patch_statistics: k must be >= 1");
  const Eigen::Index T = row.size();
  if (T < 1) throw DataError("patch_statistics: empty series");
  Vector out(4 * k);
  int filled = -1;
  for (int i = 0; i < k; ++i) {
    const Eigen::Index lo = static_cast<Eigen::Index>(i) * T / k;
    const Eigen::Index hi = static_cast<Eigen::Index>(i + 1) * T / k;
    if (hi > lo) {
      const auto chunk = row.segment(lo, hi - lo);
      const double mean = chunk.mean();
      const double var = (chunk.array() - mean).square().mean();
      out.segment<4>(4 * i) << mean, std::sqrt(var), chunk.minCoeff(), chunk.maxCoeff();
      if (filled < 0)
        for (int j = 0; j < i; ++j) out.segment<4>(4 * j) = out.segment<4>(4 * i);
      filled = i;
    } else if (filled >= 0) {
      out.segment<4>(4 * i) = out.segment<4>(4 * filled);
    }
  }
  return out;
}

/// Statistics of every variate, concatenated in variate order: length 4kV.
Vector patch_statistics(const TimeSeries& series, int k);

/// First-order difference along time; T-1 steps.
TimeSeries difference(const TimeSeries& series);

/// [base embedding | differenced-series embedding | patch statistics]
Vector build_features(const TimeSeries& series, const EmbeddingProvider& provider,
                      const AggregationConfig& agg, const AugmentConfig& aug,
                      const SeriesKey& key = {});

/// Features for every sample of a dataset, one row per sample.
Matrix build_feature_matrix(const LabeledDataset& ds, const EmbeddingProvider& provider,
                            const AggregationConfig& agg, const AugmentConfig& aug,
                            std::size_t jobs = 1);

}  // namespace tsrep
