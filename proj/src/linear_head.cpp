#include "tsrep/linear_head.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace tsrep {

void LinearTrainConfig::validate() const {
  if (!(val_fraction > 0.0 && val_fraction < 1.0))
    throw ConfigError("linear head: val_fraction must be in (0, 1)");
  if (learning_rate <= 0.0 || weight_decay < 0.0) throw ConfigError("linear head: bad optimizer settings");
  if (patience < 1 || max_epochs < 1) throw ConfigError("linear head: patience and max_epochs must be >= 1");
}

LossGradient softmax_cross_entropy(const Matrix& weights, const Vector& bias, const Matrix& X,
                                   std::span<const int> y) {
  const auto n = X.rows();
  Matrix z = X * weights.transpose();
  z.rowwise() += bias.transpose();
  const Vector zmax = z.rowwise().maxCoeff();
  Matrix p = (z.colwise() - zmax).array().exp().matrix();
  const Vector norm = p.rowwise().sum();
  LossGradient out;
  out.loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = y[static_cast<std::size_t>(i)];
    out.loss -= z(i, c) - zmax(i) - std::log(norm(i));
    p.row(i) /= norm(i);
    p(i, c) -= 1.0;
  }
  out.loss /= static_cast<double>(n);
  p /= static_cast<double>(n);
  out.grad_weights = p.transpose() * X;
  out.grad_bias = p.colwise().sum().transpose();
  return out;
}

LossGradient regularized_objective(const Matrix& weights, const Vector& bias, const Matrix& X,
                                   std::span<const int> y, double weight_decay) {
  auto g = softmax_cross_entropy(weights, bias, X, y);
  g.loss += 0.5 * weight_decay * (weights.squaredNorm() + bias.squaredNorm());
  g.grad_weights += weight_decay * weights;
  g.grad_bias += weight_decay * bias;
  return g;
}

HoldoutSplit stratified_holdout(std::span<const int> y, int num_classes, double fraction,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < y.size(); ++i) by_class[static_cast<std::size_t>(y[i])].push_back(static_cast<int>(i));

  HoldoutSplit split;
  std::vector<char> held(y.size(), 0);
  std::size_t largest = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    std::shuffle(members.begin(), members.end(), rng);
    if (members.size() > by_class[largest].size()) largest = c;
    if (members.size() < 2) continue;
    auto take = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(members.size())));
    take = std::min(take, members.size() - 1);
    for (std::size_t j = 0; j < take; ++j) held[static_cast<std::size_t>(members[j])] = 1;
  }
  if (std::find(held.begin(), held.end(), 1) == held.end() && !by_class[largest].empty())
    held[static_cast<std::size_t>(by_class[largest].front())] = 1;
  for (std::size_t i = 0; i < y.size(); ++i)
    (held[i] ? split.validation : split.fit).push_back(static_cast<int>(i));
  return split;
}

namespace {

struct Standardizer {
  RowVector mean;
  RowVector scale;

  static Standardizer from(const Matrix& X) {
    Standardizer s;
    s.mean = X.colwise().mean();
    s.scale = (X.rowwise() - s.mean).array().square().colwise().mean().sqrt().matrix();
    for (Eigen::Index f = 0; f < s.scale.size(); ++f)
      if (s.scale(f) < 1e-12) s.scale(f) = 1.0;
    return s;
  }
};

}  // namespace

Matrix LinearHead::standardize(const Matrix& X) const {
  return ((X.rowwise() - feature_mean_).array().rowwise() / feature_scale_.array()).matrix();
}

LinearHead LinearHead::fit(const Matrix& X, std::span<const int> y, int num_classes,
                           const LinearTrainConfig& cfg) {
  cfg.validate();
  if (X.rows() < 5) throw DataError("linear head: need at least 5 training samples");
  if (static_cast<std::size_t>(X.rows()) != y.size()) throw DataError("linear head: X/y size mismatch");
  if (num_classes < 2) throw DataError("linear head: need at least 2 classes");
  const auto split = stratified_holdout(y, num_classes, cfg.val_fraction, cfg.seed);
  if (split.fit.empty() || split.validation.empty())
    throw DataError("linear head: validation split would be empty");

  auto gather = [&](const std::vector<int>& idx, Matrix& Xs, std::vector<int>& ys) {
    Xs.resize(static_cast<Eigen::Index>(idx.size()), X.cols());
    ys.resize(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      Xs.row(static_cast<Eigen::Index>(i)) = X.row(idx[i]);
      ys[i] = y[static_cast<std::size_t>(idx[i])];
    }
  };
  Matrix Xf, Xv;
  std::vector<int> yf, yv;
  gather(split.fit, Xf, yf);
  gather(split.validation, Xv, yv);

  LinearHead head;
  const auto st = Standardizer::from(X);
  head.feature_mean_ = st.mean;
  head.feature_scale_ = st.scale;
  head.train(head.standardize(Xf), yf, head.standardize(Xv), yv, num_classes, cfg);
  return head;
}

LinearHead LinearHead::fit(const Matrix& X_fit, std::span<const int> y_fit, const Matrix& X_val,
                           std::span<const int> y_val, int num_classes, const LinearTrainConfig& cfg) {
  if (X_fit.rows() < 1 || X_val.rows() < 1) throw DataError("linear head: empty fit or validation set");
  if (X_fit.cols() != X_val.cols()) throw DataError("linear head: fit/validation width mismatch");
  LinearHead head;
  const auto st = Standardizer::from(X_fit);
  head.feature_mean_ = st.mean;
  head.feature_scale_ = st.scale;
  head.train(head.standardize(X_fit), y_fit, head.standardize(X_val), y_val, num_classes, cfg);
  return head;
}

void LinearHead::train(const Matrix& Zf, std::span<const int> yf, const Matrix& Zv,
                       std::span<const int> yv, int num_classes, const LinearTrainConfig& cfg) {
  const auto F = Zf.cols();
  const auto K = static_cast<Eigen::Index>(num_classes);

  // same init range as a default torch.nn.Linear
  std::mt19937_64 rng(cfg.seed ^ 0x5eedULL);
  const double bound = 1.0 / std::sqrt(static_cast<double>(F));
  std::uniform_real_distribution<double> init(-bound, bound);
  Matrix W(K, F);
  Vector b(K);
  for (Eigen::Index i = 0; i < W.size(); ++i) W.data()[i] = init(rng);
  for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = init(rng);

  Matrix mW = Matrix::Zero(K, F), vW = Matrix::Zero(K, F);
  Vector mb = Vector::Zero(K), vb = Vector::Zero(K);

  weights_ = W;
  bias_ = b;
  history_ = {};
  history_.best_validation_loss = softmax_cross_entropy(W, b, Zv, yv).loss;
  int since_best = 0;
  double bc1 = 1.0, bc2 = 1.0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const auto g = softmax_cross_entropy(W, b, Zf, yf);
    history_.final_fit_loss = g.loss;

    // AdamW: decay first, decoupled from the adaptive step
    W *= 1.0 - cfg.learning_rate * cfg.weight_decay;
    b *= 1.0 - cfg.learning_rate * cfg.weight_decay;
    mW = cfg.beta1 * mW + (1.0 - cfg.beta1) * g.grad_weights;
    mb = cfg.beta1 * mb + (1.0 - cfg.beta1) * g.grad_bias;
    vW = cfg.beta2 * vW + (1.0 - cfg.beta2) * g.grad_weights.cwiseAbs2();
    vb = cfg.beta2 * vb + (1.0 - cfg.beta2) * g.grad_bias.cwiseAbs2();
    bc1 *= cfg.beta1;
    bc2 *= cfg.beta2;
    const double step = cfg.learning_rate / (1.0 - bc1);
    const double root_bc2 = std::sqrt(1.0 - bc2);
    W.array() -= step * mW.array() / (vW.array().sqrt() / root_bc2 + cfg.epsilon);
    b.array() -= step * mb.array() / (vb.array().sqrt() / root_bc2 + cfg.epsilon);

    history_.epochs_run = epoch;
    const double val = softmax_cross_entropy(W, b, Zv, yv).loss;
    if (val < history_.best_validation_loss) {
      history_.best_validation_loss = val;
      history_.best_epoch = epoch;
      weights_ = W;
      bias_ = b;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
}

Matrix LinearHead::logits(const Matrix& X) const {
  if (X.cols() != width()) throw DataError("linear head: query width does not match training width");
  Matrix z = standardize(X) * weights_.transpose();
  z.rowwise() += bias_.transpose();
  return z;
}

std::vector<int> LinearHead::predict(const Matrix& X) const {
  const Matrix z = logits(X);
  std::vector<int> out(static_cast<std::size_t>(z.rows()));
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    Eigen::Index best;
    z.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

}  // namespace tsrep
