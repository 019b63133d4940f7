#include "tsrep/dtw.hpp"

#include "tsrep/knn.hpp"
#include "tsrep/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tsrep {

std::string to_string(DtwMode m) { return m == DtwMode::dependent ? "dependent" : "independent"; }

DtwMode parse_dtw_mode(const std::string& s) {
  if (s == "dependent") return DtwMode::dependent;
  if (s == "independent") return DtwMode::independent;
  throw ConfigError("unknown DTW mode '" + s + "' (expected dependent|independent)");
}

namespace {

// Rolling two-row DP; a and b are V x T with columns as time steps.
template <typename A, typename B>
double dtw_core(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const auto ta = a.cols();
  const auto tb = b.cols();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(static_cast<std::size_t>(tb + 1), inf);
  std::vector<double> cur(static_cast<std::size_t>(tb + 1), inf);
  prev[0] = 0.0;
  for (Eigen::Index i = 1; i <= ta; ++i) {
    cur[0] = inf;
    for (Eigen::Index j = 1; j <= tb; ++j) {
      const double cost = (a.col(i - 1) - b.col(j - 1)).squaredNorm();
      const auto ju = static_cast<std::size_t>(j);
      cur[ju] = cost + std::min({prev[ju - 1], prev[ju], cur[ju - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(tb)];
}

}  // namespace

double dtw_distance(const Matrix& a, const Matrix& b, DtwMode mode) {
  if (a.size() == 0 || b.size() == 0) throw DataError("dtw: empty series");
  if (a.rows() != b.rows()) throw DataError("dtw: variate count mismatch");
  if (mode == DtwMode::dependent) return dtw_core(a, b);
  double total = 0.0;
  for (Eigen::Index v = 0; v < a.rows(); ++v) total += dtw_core(a.row(v), b.row(v));
  return total;
}

double dtw_distance(const TimeSeries& a, const TimeSeries& b, DtwMode mode) {
  return dtw_distance(a.values(), b.values(), mode);
}

std::vector<int> dtw_knn_classify(const LabeledDataset& train, const LabeledDataset& test,
                                  const DtwConfig& config) {
  if (train.variates() != test.variates()) throw DataError("dtw: train/test variate mismatch");
  const auto n = train.size();
  if (config.k < 1 || static_cast<std::size_t>(config.k) > n) throw ConfigError("dtw: k must be in [1, N]");

  // all (test, train) pairs are independent; each lands in its own slot
  std::vector<double> dist(test.size() * n);
  parallel_for(dist.size(), config.jobs, [&](std::size_t p) {
    dist[p] = dtw_distance(test.samples[p / n], train.samples[p % n], config.mode);
  });

  std::vector<int> out(test.size());
  std::vector<std::size_t> order(n);
  std::vector<int> labels(static_cast<std::size_t>(config.k));
  for (std::size_t q = 0; q < test.size(); ++q) {
    const double* d = dist.data() + q * n;
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + config.k, order.end(), [&](std::size_t x, std::size_t y) {
      return d[x] < d[y] || (d[x] == d[y] && x < y);
    });
    for (int j = 0; j < config.k; ++j) labels[static_cast<std::size_t>(j)] = train.labels[order[static_cast<std::size_t>(j)]];
    out[q] = majority_label(labels);
  }
  return out;
}

}  // namespace tsrep
