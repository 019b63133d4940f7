#include "tsrep/pca.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsrep {

namespace {

// two-pass mean: the correction term makes the mean of identical values exact
Matrix centred(const Matrix& X) {
  RowVector mean = X.colwise().mean();
  mean += (X.rowwise() - mean).colwise().mean();
  return X.rowwise() - mean;
}

}  // namespace

Eigen::Index centred_rank(const Matrix& X) {
  const Matrix C = centred(X);
  if (C.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(C);
  const auto& s = svd.singularValues();
  const double tol = static_cast<double>(std::max(C.rows(), C.cols())) *
                     std::numeric_limits<double>::epsilon() * (s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++r;
  return r;
}

PcaResult pca(const Matrix& X, int dims) {
  if (dims < 1) throw ConfigError("pca: dims must be >= 1");
  if (X.rows() < dims || X.cols() < dims)
    throw DataError("pca: need at least " + std::to_string(dims) + " rows and columns");
  if (!X.allFinite()) throw DataError("pca: non-finite input");
  const auto rank = centred_rank(X);
  if (rank < dims)
    throw DataError("pca: centred data has rank " + std::to_string(rank) + ", fewer than the " +
                    std::to_string(dims) + " requested components");

  const Matrix C = centred(X);
  const double denom = X.rows() > 1 ? static_cast<double>(X.rows() - 1) : 1.0;
  const Matrix cov = (C.transpose() * C) / denom;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success) throw DataError("pca: eigen decomposition failed");

  const auto F = X.cols();
  PcaResult out;
  out.components.resize(F, dims);
  out.explained.resize(dims);
  for (int k = 0; k < dims; ++k) {
    // eigenvalues ascend
    const auto idx = F - 1 - k;
    Vector v = eig.eigenvectors().col(idx);
    Eigen::Index arg;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    out.components.col(k) = v;
    out.explained(k) = eig.eigenvalues()(idx);
  }
  out.projection = C * out.components;
  return out;
}

}  // namespace tsrep
