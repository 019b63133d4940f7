#include "tsrep/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsrep {

Vector midranks(std::span<const double> values) {
  const auto n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  Vector ranks(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks(static_cast<Eigen::Index>(order[k])) = r;
    i = j + 1;
  }
  return ranks;
}

Vector average_ranks(const Matrix& scores) {
  if (scores.rows() < 1 || scores.cols() < 1) throw DataError("average_ranks: empty score matrix");
  if (!scores.allFinite()) throw DataError("average_ranks: missing or non-finite cells");
  Vector total = Vector::Zero(scores.rows());
  std::vector<double> neg(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index d = 0; d < scores.cols(); ++d) {
    for (Eigen::Index m = 0; m < scores.rows(); ++m) neg[static_cast<std::size_t>(m)] = -scores(m, d);
    total += midranks(neg);
  }
  return total / static_cast<double>(scores.cols());
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("wilcoxon: samples differ in length");
  if (x.size() < 3) throw DataError("wilcoxon: need at least 3 paired observations");

  std::vector<double> diff;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (const double d = x[i] - y[i]; d != 0.0) diff.push_back(d);

  WilcoxonResult res;
  res.n = diff.size();
  if (diff.empty()) {
    res.degenerate = true;
    res.exact = true;
    res.p_value = 1.0;
    return res;
  }

  std::vector<double> mag(diff.size());
  std::transform(diff.begin(), diff.end(), mag.begin(), [](double d) { return std::abs(d); });
  const Vector ranks = midranks(mag);
  for (std::size_t i = 0; i < diff.size(); ++i)
    if (diff[i] > 0) res.w_plus += ranks(static_cast<Eigen::Index>(i));

  const auto n = static_cast<double>(res.n);
  if (res.n <= kWilcoxonExactMaxN) {
    // doubled mid-ranks are integers; count sign assignments by subset sum
    std::vector<int> r2(res.n);
    int total = 0;
    for (std::size_t i = 0; i < res.n; ++i) {
      r2[i] = static_cast<int>(std::lround(2.0 * ranks(static_cast<Eigen::Index>(i))));
      total += r2[i];
    }
    std::vector<double> count(static_cast<std::size_t>(total + 1), 0.0);
    count[0] = 1.0;
    int reach = 0;
    for (int r : r2) {
      for (int s = reach; s >= 0; --s)
        if (count[static_cast<std::size_t>(s)] != 0.0)
          count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
      reach += r;
    }
    const auto w2 = static_cast<int>(std::lround(2.0 * res.w_plus));
    double lower = 0.0, upper = 0.0;
    for (int s = 0; s <= total; ++s) {
      if (s <= w2) lower += count[static_cast<std::size_t>(s)];
      if (s >= w2) upper += count[static_cast<std::size_t>(s)];
    }
    const double all = std::ldexp(1.0, static_cast<int>(res.n));
    res.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
    res.exact = true;
    return res;
  }

  // tie correction: sum over groups of equal |d| of (t^3 - t)
  std::vector<double> sorted(mag);
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    ties += t * t * t - t;
    i = j + 1;
  }
  const double mean = n * (n + 1) / 4.0;
  const double var = n * (n + 1) * (2 * n + 1) / 24.0 - ties / 48.0;
  const double dev = std::max(0.0, std::abs(res.w_plus - mean) - 0.5);
  const double z = var > 0 ? dev / std::sqrt(var) : 0.0;
  res.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
  return res;
}

std::vector<bool> holm_correction(std::span<const double> pvals, double alpha) {
  const auto m = pvals.size();
  for (double p : pvals)
    if (!(p >= 0.0 && p <= 1.0)) throw DataError("holm: p-value outside [0, 1]");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pvals[a] < pvals[b]; });
  std::vector<bool> reject(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (pvals[order[i]] > alpha / static_cast<double>(m - i)) break;
    reject[order[i]] = true;
  }
  return reject;
}

std::vector<int> rank_order(const Vector& ranks) {
  std::vector<int> order(static_cast<std::size_t>(ranks.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ranks(a) < ranks(b); });
  return order;
}

std::vector<CdGroup> cd_groups(const Vector& ranks, const RejectMatrix& reject) {
  const auto m = static_cast<int>(ranks.size());
  if (reject.rows() != m || reject.cols() != m) throw DataError("cd_groups: reject matrix shape mismatch");
  const auto order = rank_order(ranks);

  std::vector<CdGroup> groups;
  int prev_end = -1;
  for (int i = 0; i < m; ++i) {
    int end = i;
    // extend while the next config is compatible with every member so far
    while (end + 1 < m) {
      bool ok = true;
      for (int k = i; k <= end && ok; ++k) ok = !reject(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(end + 1)]);
      if (!ok) break;
      ++end;
    }
    if (end > prev_end && end > i)
      groups.emplace_back(order.begin() + i, order.begin() + end + 1);
    prev_end = std::max(prev_end, end);
  }
  return groups;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("correlation: length mismatch");
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Vector> xv(x.data(), n), yv(y.data(), n);
  const Vector xc = xv.array() - xv.mean();
  const Vector yc = yv.array() - yv.mean();
  const double sx = xc.norm(), sy = yc.norm();
  if (sx == 0.0 || sy == 0.0) throw DataError("correlation: zero variance input");
  return xc.dot(yc) / (sx * sy);
}

Correlation score_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DataError("correlation: length mismatch");
  if (xs.size() < 3) throw DataError("correlation: need at least 3 points");
  Correlation c;
  c.pearson = pearson(xs, ys);
  const Vector rx = midranks(xs), ry = midranks(ys);
  c.spearman = pearson(std::span<const double>(rx.data(), static_cast<std::size_t>(rx.size())),
                       std::span<const double>(ry.data(), static_cast<std::size_t>(ry.size())));
  return c;
}

PairwiseTests pairwise_wilcoxon_holm(const Matrix& scores, double alpha) {
  const auto m = scores.rows();
  PairwiseTests out;
  out.p_values = Matrix::Ones(m, m);
  out.reject = RejectMatrix::Constant(m, m, false);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  std::vector<double> ps;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b) {
      const RowVector ra = scores.row(a), rb = scores.row(b);
      const auto w = wilcoxon_signed_rank(std::span<const double>(ra.data(), static_cast<std::size_t>(ra.size())),
                                          std::span<const double>(rb.data(), static_cast<std::size_t>(rb.size())));
      out.p_values(a, b) = out.p_values(b, a) = w.p_value;
      pairs.emplace_back(a, b);
      ps.push_back(w.p_value);
    }
  const auto flags = holm_correction(ps, alpha);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    out.reject(pairs[i].first, pairs[i].second) = out.reject(pairs[i].second, pairs[i].first) = flags[i];
  return out;
}

}  // namespace tsrep
