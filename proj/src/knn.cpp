#include "tsrep/knn.hpp"

#include "tsrep/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tsrep {

int majority_label(std::span<const int> neighbour_labels) {
  std::map<int, int> votes;
  for (int l : neighbour_labels) ++votes[l];
  int best = -1, best_votes = 0;
  for (const auto& [label, n] : votes)  // ascending label order
    if (n > best_votes) {
      best = label;
      best_votes = n;
    }
  return best;
}

std::vector<int> knn_predict(const Matrix& train_X, std::span<const int> train_y, const Matrix& queries,
                             int k, std::size_t jobs) {
  const auto n = static_cast<std::size_t>(train_X.rows());
  if (n != train_y.size()) throw DataError("knn: X/y size mismatch");
  if (k < 1 || static_cast<std::size_t>(k) > n) throw ConfigError("knn: k must be in [1, N]");
  if (queries.cols() != train_X.cols()) throw DataError("knn: query width does not match training width");

  std::vector<int> out(static_cast<std::size_t>(queries.rows()));
  parallel_for(out.size(), jobs, [&](std::size_t q) {
    const auto query = queries.row(static_cast<Eigen::Index>(q));
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) dist[i] = cosine_distance(train_X.row(static_cast<Eigen::Index>(i)), query);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](std::size_t a, std::size_t b) {
      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
    });
    std::vector<int> labels(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) labels[static_cast<std::size_t>(j)] = train_y[order[static_cast<std::size_t>(j)]];
    out[q] = majority_label(labels);
  });
  return out;
}

KnnModel::KnnModel(Matrix train_X, std::vector<int> train_y, int num_classes, int k)
    : X_(std::move(train_X)), y_(std::move(train_y)), num_classes_(num_classes), k_(k) {
  if (static_cast<std::size_t>(X_.rows()) != y_.size()) throw DataError("knn: X/y size mismatch");
  if (k_ < 1 || k_ > X_.rows()) throw ConfigError("knn: k must be in [1, N]");
}

std::vector<int> KnnModel::predict(const Matrix& X, std::size_t jobs) const {
  return knn_predict(X_, y_, X, k_, jobs);
}

}  // namespace tsrep
