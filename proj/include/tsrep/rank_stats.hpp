#pragma once

#include "tsrep/core.hpp"

#include <span>

namespace tsrep {

/// Ascending mid-ranks (1-based; ties share the mean of their rank span).
Vector midranks(std::span<const double> values);

/// scores is configs x datasets, higher is better. Rank 1 = best per dataset,
/// ties mid-ranked; returns the mean rank of every config.
Vector average_ranks(const Matrix& scores);

struct WilcoxonResult {
  double p_value = 1.0;
  double w_plus = 0.0;      // sum of positive-difference ranks
  std::size_t n = 0;        // non-zero differences
  bool exact = false;
  bool degenerate = false;  // every difference was zero
};

inline constexpr std::size_t kWilcoxonExactMaxN = 25;

/// Two-sided paired test. Zero differences are dropped, tied |d| get mid-ranks.
/// n <= 25 uses the exact null distribution of W+ over all 2^n sign
/// assignments; larger n uses the tie-corrected normal approximation with
/// continuity correction.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

/// Holm step-down at level alpha; flags are returned in input order.
std::vector<bool> holm_correction(std::span<const double> pvals, double alpha = 0.1);

/// Symmetric M x M reject matrix with a false diagonal.
using RejectMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Group = indices (into the config list) of a maximal run of configs,
/// contiguous in ascending rank order, with no rejected pair inside.
using CdGroup = std::vector<int>;

/// Maximal reject-free contiguous intervals in rank order, size >= 2.
/// Groups list members in rank order; groups are ordered by their first member.
std::vector<CdGroup> cd_groups(const Vector& ranks, const RejectMatrix& reject);

struct Correlation {
  double pearson = 0.0;
  double spearman = 0.0;
};

double pearson(std::span<const double> x, std::span<const double> y);
Correlation score_correlation(std::span<const double> xs, std::span<const double> ys);

/// Config order sorted by mean rank (stable on ties).
std::vector<int> rank_order(const Vector& ranks);

/// Full pairwise Wilcoxon + Holm over rows of a configs x datasets matrix.
struct PairwiseTests {
  Matrix p_values;     // M x M, symmetric, 1 on the diagonal
  RejectMatrix reject; // Holm decisions over the family of all M(M-1)/2 pairs
};
PairwiseTests pairwise_wilcoxon_holm(const Matrix& scores, double alpha = 0.1);

}  // namespace tsrep
