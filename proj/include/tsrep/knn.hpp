#pragma once

#include "tsrep/core.hpp"

#include <span>

namespace tsrep {

/// 1 - cos(a, b). A zero vector is at distance 1 from every non-zero vector
/// and 0 from another zero vector.
template <typename A, typename B>
double cosine_distance(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return (na == 0.0 && nb == 0.0) ? 0.0 : 1.0;
  return 1.0 - a.dot(b) / (na * nb);
}

/// Majority vote over the labels of the k nearest rows by cosine distance.
/// Distance ties resolve to the lower training index; vote ties to the
/// smaller class index.
std::vector<int> knn_predict(const Matrix& train_X, std::span<const int> train_y, const Matrix& queries,
                             int k = 1, std::size_t jobs = 1);

/// Vote among neighbour labels listed nearest first. Ties go to the smallest class.
int majority_label(std::span<const int> neighbour_labels);

class KnnModel {
public:
  KnnModel(Matrix train_X, std::vector<int> train_y, int num_classes, int k = 1);
  std::vector<int> predict(const Matrix& X, std::size_t jobs = 1) const;
  int num_classes() const { return num_classes_; }
  Eigen::Index width() const { return X_.cols(); }

private:
  Matrix X_;
  std::vector<int> y_;
  int num_classes_;
  int k_;
};

}  // namespace tsrep
