#include "tsrep/augment.hpp"

#include "tsrep/parallel.hpp"

namespace tsrep {

Vector patch_statistics(const TimeSeries& series, int k) {
  Vector out(4 * k * series.variates());
  for (Eigen::Index v = 0; v < series.variates(); ++v)
    out.segment(4 * k * v, 4 * k) = patch_statistics_row(series.variate(v), k);
  return out;
}

TimeSeries difference(const TimeSeries& series) {
  const auto T = series.length();
  if (T < 2) throw DataError("difference: series needs T >= 2");
  const auto& x = series.values();
  return TimeSeries(x.rightCols(T - 1) - x.leftCols(T - 1));
}

Vector build_features(const TimeSeries& series, const EmbeddingProvider& provider,
                      const AggregationConfig& agg, const AugmentConfig& aug, const SeriesKey& key) {
  std::vector<Vector> blocks;
  blocks.push_back(embed_sample(series, provider, agg, key));
  if (aug.diff) {
    SeriesKey dk = key;
    dk.differenced = true;
    blocks.push_back(embed_sample(difference(series), provider, agg, dk));
  }
  if (aug.stats) blocks.push_back(patch_statistics(series, aug.k));
  if (blocks.size() == 1) return std::move(blocks.front());

  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.size();
  Vector out(total);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.segment(at, b.size()) = b;
    at += b.size();
  }
  return out;
}

Matrix build_feature_matrix(const LabeledDataset& ds, const EmbeddingProvider& provider,
                            const AggregationConfig& agg, const AugmentConfig& aug, std::size_t jobs) {
  std::vector<Vector> rows(ds.size());
  parallel_for(ds.size(), jobs, [&](std::size_t i) {
    rows[i] = build_features(ds.samples[i], provider, agg, aug,
                             SeriesKey{ds.name, ds.split, i, 0, false});
  });
  if (rows.empty()) return {};
  Matrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw DataError("build_feature_matrix: feature width varies");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

}  // namespace tsrep
