#pragma once

// Independent reference implementations used to check the library.

#include "tsrep/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace oracle {

using tsrep::Matrix;
using tsrep::Vector;

// Minimum accumulated squared cost over every monotone alignment path,
// enumerated recursively.
inline double dtw_brute(const Matrix& a, const Matrix& b) {
  const auto Ta = a.cols(), Tb = b.cols();
  double best = std::numeric_limits<double>::infinity();
  std::function<void(Eigen::Index, Eigen::Index, double)> walk = [&](Eigen::Index i, Eigen::Index j, double acc) {
    acc += (a.col(i) - b.col(j)).squaredNorm();
    if (i == Ta - 1 && j == Tb - 1) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < Ta && j + 1 < Tb) walk(i + 1, j + 1, acc);
    if (i + 1 < Ta) walk(i + 1, j, acc);
    if (j + 1 < Tb) walk(i, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

inline std::size_t count_paths(Eigen::Index Ta, Eigen::Index Tb) {
  if (Ta == 1 || Tb == 1) return 1;
  return count_paths(Ta - 1, Tb) + count_paths(Ta, Tb - 1) + count_paths(Ta - 1, Tb - 1);
}

// Rank of values[i] among values (1 = smallest), ties share the mean position.
inline double count_rank(std::span<const double> values, std::size_t i) {
  double below = 0, equal = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] < values[i]) ++below;
    else if (values[j] == values[i]) ++equal;
  }
  return below + (equal + 1.0) / 2.0;
}

// Exact two-sided signed-rank p-value by enumerating all 2^n sign patterns.
inline double wilcoxon_enumerate(std::span<const double> x, std::span<const double> y) {
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) d.push_back(x[i] - y[i]);
  const auto n = d.size();
  if (n == 0) return 1.0;
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(d[i]);
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[i] = count_rank(mag, i);
  double w = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (d[i] > 0) w += rank[i];
  double le = 0, ge = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s += rank[i];
    if (s <= w + 1e-9) ++le;
    if (s >= w - 1e-9) ++ge;
  }
  return std::min(1.0, 2.0 * std::min(le, ge) / std::ldexp(1.0, static_cast<int>(n)));
}

inline double balanced_accuracy_tally(std::span<const int> pred, std::span<const int> truth) {
  const int K = *std::max_element(truth.begin(), truth.end()) + 1;
  std::vector<double> hit(K, 0), total(K, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    total[truth[i]] += 1;
    if (pred[i] == truth[i]) hit[truth[i]] += 1;
  }
  double sum = 0;
  int present = 0;
  for (int c = 0; c < K; ++c)
    if (total[c] > 0) {
      sum += hit[c] / total[c];
      ++present;
    }
  return sum / present;
}

// Chunk membership t in chunk i  <=>  i*T < (t+1)*k <= (i+1)*T.
inline std::vector<std::vector<Eigen::Index>> partition(Eigen::Index T, int k) {
  std::vector<std::vector<Eigen::Index>> chunks(k);
  for (Eigen::Index t = 0; t < T; ++t)
    for (int i = 0; i < k; ++i)
      if (i * T < (t + 1) * k && (t + 1) * k <= (i + 1) * T) chunks[i].push_back(t);
  return chunks;
}

inline std::vector<double> patch_stats(const std::vector<double>& x, int k) {
  const auto chunks = partition(static_cast<Eigen::Index>(x.size()), k);
  std::vector<std::vector<double>> stats(k);
  for (int i = 0; i < k; ++i) {
    if (chunks[i].empty()) continue;
    double sum = 0, lo = x[chunks[i][0]], hi = lo;
    for (auto t : chunks[i]) {
      sum += x[t];
      lo = std::min(lo, x[t]);
      hi = std::max(hi, x[t]);
    }
    const double mean = sum / chunks[i].size();
    double ss = 0;
    for (auto t : chunks[i]) ss += (x[t] - mean) * (x[t] - mean);
    stats[i] = {mean, std::sqrt(ss / chunks[i].size()), lo, hi};
  }
  for (int i = 0; i < k; ++i)
    if (stats[i].empty()) {
      for (int j = i - 1; j >= 0 && stats[i].empty(); --j)
        if (!chunks[j].empty()) stats[i] = stats[j];
      for (int j = i + 1; j < k && stats[i].empty(); ++j)
        if (!chunks[j].empty()) stats[i] = stats[j];
    }
  std::vector<double> out;
  for (const auto& s : stats) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// Maximal contiguous runs (in rank order, length >= 2) with no rejected pair.
inline std::vector<std::vector<int>> cd_intervals(const std::vector<int>& order,
                                                  const std::function<bool(int, int)>& rejected) {
  const int m = static_cast<int>(order.size());
  std::vector<std::pair<int, int>> ok;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      bool clean = true;
      for (int a = i; a <= j; ++a)
        for (int b = a + 1; b <= j; ++b) clean = clean && !rejected(order[a], order[b]);
      if (clean) ok.emplace_back(i, j);
    }
  std::vector<std::vector<int>> out;
  for (auto [i, j] : ok) {
    bool maximal = true;
    for (auto [p, q] : ok)
      if ((p < i || q > j) && p <= i && q >= j) maximal = false;
    if (maximal) out.emplace_back(order.begin() + i, order.begin() + j + 1);
  }
  return out;
}

// Central differences of f at every entry of p.
inline Matrix numeric_gradient(const std::function<double(const Matrix&)>& f, Matrix p, double h) {
  Matrix g(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double keep = p.data()[i];
    p.data()[i] = keep + h;
    const double up = f(p);
    p.data()[i] = keep - h;
    const double down = f(p);
    p.data()[i] = keep;
    g.data()[i] = (up - down) / (2 * h);
  }
  return g;
}

inline double max_relative_error(const Matrix& a, const Matrix& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a.data()[i]), std::abs(b.data()[i]), 1e-8});
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]) / denom);
  }
  return worst;
}

}  // namespace oracle
