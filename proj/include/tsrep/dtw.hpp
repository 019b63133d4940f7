#pragma once

#include "tsrep/core.hpp"

namespace tsrep {

enum class DtwMode { dependent, independent };

std::string to_string(DtwMode m);
DtwMode parse_dtw_mode(const std::string& s);

struct DtwConfig {
  int k = 1;
  DtwMode mode = DtwMode::dependent;
  std::size_t jobs = 1;
};

/// Unconstrained DTW with steps {match, insert, delete}. The per-step cost is
/// the squared Euclidean distance across variates (dependent) and the result is
/// the accumulated cost, without a final square root. Independent mode sums
/// univariate distances of each variate.
double dtw_distance(const Matrix& a, const Matrix& b, DtwMode mode = DtwMode::dependent);
double dtw_distance(const TimeSeries& a, const TimeSeries& b, DtwMode mode = DtwMode::dependent);

/// k-NN over DTW distances. Vote ties go to the smallest class index, distance
/// ties to the smallest training index.
std::vector<int> dtw_knn_classify(const LabeledDataset& train, const LabeledDataset& test,
                                  const DtwConfig& config);

}  // namespace tsrep
