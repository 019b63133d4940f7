#pragma once

#include "tsrep/forest.hpp"
#include "tsrep/knn.hpp"
#include "tsrep/linear_head.hpp"

#include <string>
#include <variant>

namespace tsrep {

enum class ClassifierKind { forest, linear, knn };

std::string to_string(ClassifierKind k);
ClassifierKind parse_classifier_kind(const std::string& s);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::forest;
  ForestConfig forest;
  LinearTrainConfig linear;
  int knn_k = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

/// A fitted head of any of the three kinds. Immutable after training.
class TrainedClassifier {
public:
  static TrainedClassifier train(const Matrix& X, std::span<const int> y, int num_classes,
                                 const ClassifierConfig& cfg);

  std::vector<int> predict(const Matrix& X, std::size_t jobs = 1) const;

  ClassifierKind kind() const;
  Eigen::Index width() const;
  int num_classes() const;

private:
  using Model = std::variant<RandomForest, LinearHead, KnnModel>;
  explicit TrainedClassifier(Model m) : model_(std::move(m)) {}
  Model model_;
};

}  // namespace tsrep
