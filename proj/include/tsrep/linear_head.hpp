#pragma once

#include "tsrep/core.hpp"

#include <cstdint>
#include <span>

namespace tsrep {

struct LinearTrainConfig {
  double learning_rate = 1e-4;
  double weight_decay = 1e-2;
  double val_fraction = 0.2;
  int patience = 100;
  int max_epochs = 10000;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Mean softmax cross-entropy of logits X W^T + b and its gradients.
struct LossGradient {
  double loss = 0.0;
  Matrix grad_weights;  // K x F
  Vector grad_bias;     // K
};

LossGradient softmax_cross_entropy(const Matrix& weights, const Vector& bias, const Matrix& X,
                                   std::span<const int> y);

/// Cross-entropy plus the L2 penalty (weight_decay / 2)(|W|^2 + |b|^2) whose
/// gradient is the term the decoupled update subtracts.
LossGradient regularized_objective(const Matrix& weights, const Vector& bias, const Matrix& X,
                                   std::span<const int> y, double weight_decay);

/// Seeded stratified holdout: each class with at least two members contributes
/// round(fraction * n_c) samples (at most n_c - 1); at least one sample is held out.
struct HoldoutSplit {
  std::vector<int> fit;
  std::vector<int> validation;
};
HoldoutSplit stratified_holdout(std::span<const int> y, int num_classes, double fraction,
                                std::uint64_t seed);

/// Single linear layer over per-feature standardized inputs.
class LinearHead {
public:
  struct History {
    int epochs_run = 0;
    int best_epoch = 0;
    double best_validation_loss = 0.0;
    double final_fit_loss = 0.0;
  };

  /// Holds out a validation split, trains full-batch AdamW with early stopping,
  /// and keeps the parameters of the best validation epoch.
  static LinearHead fit(const Matrix& X, std::span<const int> y, int num_classes,
                        const LinearTrainConfig& cfg);

  /// Trains on explicit fit/validation sets (both already raw features).
  static LinearHead fit(const Matrix& X_fit, std::span<const int> y_fit, const Matrix& X_val,
                        std::span<const int> y_val, int num_classes, const LinearTrainConfig& cfg);

  Matrix logits(const Matrix& X) const;
  std::vector<int> predict(const Matrix& X) const;

  const Matrix& weights() const { return weights_; }
  const Vector& bias() const { return bias_; }
  const History& history() const { return history_; }
  int num_classes() const { return static_cast<int>(weights_.rows()); }
  Eigen::Index width() const { return weights_.cols(); }

private:
  Matrix standardize(const Matrix& X) const;
  void train(const Matrix& Zf, std::span<const int> yf, const Matrix& Zv, std::span<const int> yv,
             int num_classes, const LinearTrainConfig& cfg);

  Matrix weights_;
  Vector bias_;
  RowVector feature_mean_;
  RowVector feature_scale_;
  History history_;
};

}  // namespace tsrep
