#pragma once

#include "tsrep/core.hpp"

#include <cstdint>
#include <span>

namespace tsrep {

struct ForestConfig {
  int trees = 300;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

/// Binary CART tree stored as a flat node array; leaves have feature == -1.
class DecisionTree {
public:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
  };

  /// Gini splits over ceil(sqrt(F)) sampled features per node, grown until
  /// leaves are pure or no split separates the samples. `rows` are indices
  /// into X (a bootstrap sample may repeat them).
  static DecisionTree grow(const Matrix& X, std::span<const int> y, int num_classes,
                           std::vector<int> rows, std::uint64_t seed);

  template <typename Derived>
  int predict(const Eigen::MatrixBase<Derived>& x) const {
    int n = 0;
    while (nodes_[n].feature >= 0)
      n = x(nodes_[n].feature) <= nodes_[n].threshold ? nodes_[n].left : nodes_[n].right;
    return nodes_[n].label;
  }

  std::size_t size() const { return nodes_.size(); }
  std::size_t depth() const;

private:
  std::vector<Node> nodes_;
};

class RandomForest {
public:
  /// Bootstrap-aggregated trees; tree t uses seed derive_seed(seed, t), so the
  /// fitted forest does not depend on cfg.jobs.
  static RandomForest fit(const Matrix& X, std::span<const int> y, int num_classes,
                          const ForestConfig& cfg);

  /// Hard majority vote; ties go to the smallest class index.
  std::vector<int> predict(const Matrix& X, std::size_t jobs = 1) const;

  int num_classes() const { return num_classes_; }
  Eigen::Index width() const { return width_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }

private:
  std::vector<DecisionTree> trees_;
  int num_classes_ = 0;
  Eigen::Index width_ = 0;
};

}  // namespace tsrep
