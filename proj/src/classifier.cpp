#include "tsrep/classifier.hpp"

namespace tsrep {

std::string to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::forest: return "forest";
    case ClassifierKind::linear: return "linear";
    case ClassifierKind::knn: return "knn";
  }
  return "?";
}

ClassifierKind parse_classifier_kind(const std::string& s) {
  if (s == "forest") return ClassifierKind::forest;
  if (s == "linear") return ClassifierKind::linear;
  if (s == "knn") return ClassifierKind::knn;
  throw ConfigError("unknown classifier '" + s + "' (expected forest|linear|knn)");
}

TrainedClassifier TrainedClassifier::train(const Matrix& X, std::span<const int> y, int num_classes,
                                           const ClassifierConfig& cfg) {
  switch (cfg.kind) {
    case ClassifierKind::forest: {
      auto fc = cfg.forest;
      fc.seed = cfg.seed;
      fc.jobs = cfg.jobs;
      return TrainedClassifier(RandomForest::fit(X, y, num_classes, fc));
    }
    case ClassifierKind::linear: {
      auto lc = cfg.linear;
      lc.seed = cfg.seed;
      return TrainedClassifier(LinearHead::fit(X, y, num_classes, lc));
    }
    case ClassifierKind::knn:
      return TrainedClassifier(KnnModel(X, std::vector<int>(y.begin(), y.end()), num_classes, cfg.knn_k));
  }
  throw ConfigError("unknown classifier kind");
}

std::vector<int> TrainedClassifier::predict(const Matrix& X, std::size_t jobs) const {
  if (X.cols() != width()) throw DataError("classifier: query width does not match training width");
  return std::visit(
      [&](const auto& m) -> std::vector<int> {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LinearHead>)
          return m.predict(X);
        else
          return m.predict(X, jobs);
      },
      model_);
}

ClassifierKind TrainedClassifier::kind() const {
  return static_cast<ClassifierKind>(model_.index());
}

Eigen::Index TrainedClassifier::width() const {
  return std::visit([](const auto& m) { return m.width(); }, model_);
}

int TrainedClassifier::num_classes() const {
  return std::visit([](const auto& m) { return m.num_classes(); }, model_);
}

}  // namespace tsrep
