#include "tsrep/forest.hpp"

#include "tsrep/parallel.hpp"
#include "tsrep/seed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace tsrep {

namespace {

int majority(std::span<const int> counts) {
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

struct Candidate {
  int feature = -1;
  double threshold = 0.0;
  double score = -1.0;  // sum_c n_lc^2 / n_l + sum_c n_rc^2 / n_r, larger is better
};

}  // namespace

DecisionTree DecisionTree::grow(const Matrix& X, std::span<const int> y, int num_classes,
                                std::vector<int> rows, std::uint64_t seed) {
  const int F = static_cast<int>(X.cols());
  const int mtry = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(F)))));
  std::mt19937_64 rng(seed);

  DecisionTree tree;
  struct Pending {
    int node;
    std::vector<int> rows;
  };
  std::vector<Pending> stack;
  tree.nodes_.emplace_back();
  stack.push_back({0, std::move(rows)});

  std::vector<int> features(static_cast<std::size_t>(F));
  std::vector<std::pair<double, int>> column;
  std::vector<int> counts(static_cast<std::size_t>(num_classes));
  std::vector<int> left(static_cast<std::size_t>(num_classes));

  while (!stack.empty()) {
    Pending job = std::move(stack.back());
    stack.pop_back();
    const auto n = static_cast<int>(job.rows.size());

    std::fill(counts.begin(), counts.end(), 0);
    for (int r : job.rows) ++counts[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])];
    tree.nodes_[static_cast<std::size_t>(job.node)].label = majority(counts);
    if (*std::max_element(counts.begin(), counts.end()) == n) continue;

    std::iota(features.begin(), features.end(), 0);
    Candidate best;
    int visited = 0;
    for (int fi = 0; fi < F; ++fi) {
      std::uniform_int_distribution<int> pick(fi, F - 1);
      std::swap(features[static_cast<std::size_t>(fi)], features[static_cast<std::size_t>(pick(rng))]);
      const int f = features[static_cast<std::size_t>(fi)];

      column.clear();
      for (int r : job.rows) column.emplace_back(X(r, f), y[static_cast<std::size_t>(r)]);
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;  // constant here
      ++visited;

      std::fill(left.begin(), left.end(), 0);
      double left_sq = 0.0;
      double right_sq = 0.0;
      for (int c = 0; c < num_classes; ++c)
        right_sq += static_cast<double>(counts[static_cast<std::size_t>(c)]) * counts[static_cast<std::size_t>(c)];
      for (int i = 0; i + 1 < n; ++i) {
        const auto c = static_cast<std::size_t>(column[static_cast<std::size_t>(i)].second);
        const double lc = left[c];
        const double rc = counts[c] - left[c];
        left_sq += 2 * lc + 1;
        right_sq -= 2 * rc - 1;
        ++left[c];
        const double a = column[static_cast<std::size_t>(i)].first;
        const double b = column[static_cast<std::size_t>(i) + 1].first;
        if (a == b) continue;
        const double score = left_sq / (i + 1) + right_sq / (n - i - 1);
        if (score > best.score) {
          double thr = a + (b - a) / 2.0;
          if (thr >= b) thr = a;
          best = {f, thr, score};
        }
      }
      if (visited >= mtry && best.feature >= 0) break;
    }
    if (best.feature < 0) continue;  // no feature separates these rows

    std::vector<int> lrows, rrows;
    for (int r : job.rows) (X(r, best.feature) <= best.threshold ? lrows : rrows).push_back(r);
    const int li = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    tree.nodes_.emplace_back();
    auto& node = tree.nodes_[static_cast<std::size_t>(job.node)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = li;
    node.right = li + 1;
    stack.push_back({li + 1, std::move(rrows)});
    stack.push_back({li, std::move(lrows)});
  }
  return tree;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, d[i]);
    if (nodes_[i].feature >= 0) {
      d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    }
  }
  return best;
}

RandomForest RandomForest::fit(const Matrix& X, std::span<const int> y, int num_classes,
                               const ForestConfig& cfg) {
  if (X.rows() < 2) throw DataError("forest: need at least 2 training samples");
  if (static_cast<std::size_t>(X.rows()) != y.size()) throw DataError("forest: X/y size mismatch");
  if (cfg.trees < 1) throw ConfigError("forest: trees must be >= 1");
  std::vector<int> present(static_cast<std::size_t>(num_classes), 0);
  for (int c : y) {
    if (c < 0 || c >= num_classes) throw DataError("forest: label out of range");
    present[static_cast<std::size_t>(c)] = 1;
  }
  if (std::accumulate(present.begin(), present.end(), 0) < 2)
    throw DataError("forest: training data contains a single class");

  RandomForest rf;
  rf.num_classes_ = num_classes;
  rf.width_ = X.cols();
  rf.trees_.resize(static_cast<std::size_t>(cfg.trees));
  const auto n = static_cast<int>(X.rows());
  parallel_for(rf.trees_.size(), cfg.jobs, [&](std::size_t t) {
    const auto tree_seed = derive_seed(cfg.seed, t);
    std::mt19937_64 rng(tree_seed);
    std::uniform_int_distribution<int> draw(0, n - 1);
    std::vector<int> rows(static_cast<std::size_t>(n));
    for (auto& r : rows) r = draw(rng);
    rf.trees_[t] = DecisionTree::grow(X, y, num_classes, std::move(rows), mix_seed(tree_seed));
  });
  return rf;
}

std::vector<int> RandomForest::predict(const Matrix& X, std::size_t jobs) const {
  if (X.cols() != width_) throw DataError("forest: query width does not match training width");
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    std::vector<int> votes(static_cast<std::size_t>(num_classes_), 0);
    const auto row = X.row(static_cast<Eigen::Index>(i));
    for (const auto& t : trees_) ++votes[static_cast<std::size_t>(t.predict(row))];
    out[i] = majority(votes);
  });
  return out;
}

}  // namespace tsrep
