#pragma once

#include "tsrep/core.hpp"

namespace tsrep {

struct PcaResult {
  Matrix projection;     // N x dims
  Matrix components;     // F x dims, unit columns
  Vector explained;      // covariance eigenvalues of the kept components (divisor N - 1)
};

/// Projects centred rows onto the leading `dims` principal directions. Each
/// component is signed so that its largest-magnitude loading is positive.
/// Throws DataError when the centred data has rank < dims.
PcaResult pca(const Matrix& X, int dims = 2);

inline Matrix pca_project(const Matrix& X, int dims = 2) { return pca(X, dims).projection; }

/// Rank of the centred data: singular values above max(N, F) * eps * s_max.
Eigen::Index centred_rank(const Matrix& X);

}  // namespace tsrep
