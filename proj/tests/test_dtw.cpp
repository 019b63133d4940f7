#include "oracles.hpp"

#include "tsrep/dtw.hpp"

#include <doctest.h>

#include <random>

using namespace tsrep;

namespace {

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

LabeledDataset make(std::vector<Matrix> xs, std::vector<int> ys, int K) {
  LabeledDataset ds;
  ds.name = "d";
  ds.num_classes = K;
  for (auto& x : xs) ds.samples.emplace_back(std::move(x));
  ds.labels = std::move(ys);
  return ds;
}

Matrix row(std::initializer_list<double> v) {
  Matrix m(1, static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(0, i++) = x;
  return m;
}

}  // namespace

TEST_CASE("dtw basics") {
  const Matrix a = row({1, 2, 3, 2});
  CHECK(dtw_distance(a, a) == 0.0);
  CHECK(dtw_distance(row({0}), row({3})) == 9.0);
  CHECK(dtw_distance(row({0, 0, 1}), row({0, 1})) == 0.0);
  CHECK(oracle::count_paths(3, 3) == 13);
  CHECK_THROWS_AS(dtw_distance(Matrix::Zero(1, 3), Matrix::Zero(2, 3)), DataError);
}

TEST_CASE("dtw equals brute-force path enumeration") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const auto V = static_cast<Eigen::Index>(1 + rng() % 2);
    const auto Ta = static_cast<Eigen::Index>(1 + rng() % 6);
    const auto Tb = static_cast<Eigen::Index>(1 + rng() % 6);
    const Matrix a = random_matrix(V, Ta, rng), b = random_matrix(V, Tb, rng);
    const double d = dtw_distance(a, b);
    CHECK(d == oracle::dtw_brute(a, b));
    CHECK(d == dtw_distance(b, a));
    CHECK(d >= 0.0);
    if (Ta == Tb) CHECK(d <= (a - b).colwise().squaredNorm().sum());
    double indep = 0;
    for (Eigen::Index v = 0; v < V; ++v) indep += oracle::dtw_brute(a.row(v), b.row(v));
    CHECK(dtw_distance(a, b, DtwMode::independent) == doctest::Approx(indep).epsilon(1e-14));
  }
}

TEST_CASE("dtw under element duplication") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto Ta = static_cast<Eigen::Index>(1 + rng() % 4), Tb = static_cast<Eigen::Index>(1 + rng() % 4);
    const Matrix a = random_matrix(1, Ta, rng), b = random_matrix(1, Tb, rng);
    Matrix a2(1, 2 * Ta), b2(1, 2 * Tb);
    for (Eigen::Index t = 0; t < Ta; ++t) a2(0, 2 * t) = a2(0, 2 * t + 1) = a(0, t);
    for (Eigen::Index t = 0; t < Tb; ++t) b2(0, 2 * t) = b2(0, 2 * t + 1) = b(0, t);
    CHECK(dtw_distance(a2, b2) == oracle::dtw_brute(a2, b2));
  }
}

TEST_CASE("dtw knn classification") {
  const auto train = make({row({0, 0, 0}), row({5, 5, 5}), row({9, 9, 9})}, {0, 1, 2}, 3);
  CHECK(dtw_knn_classify(train, make({row({5, 5, 5})}, {0}, 3), {})[0] == 1);

  // k=3: neighbour labels {0,0,1} -> 0
  const auto t2 = make({row({0, 0}), row({1, 1}), row({2, 2}), row({50, 50})}, {0, 0, 1, 1}, 2);
  DtwConfig k3;
  k3.k = 3;
  CHECK(dtw_knn_classify(t2, make({row({1, 1})}, {0}, 2), k3)[0] == 0);

  // k=3: three-way tie -> smallest class
  const auto t3 = make({row({1, 1}), row({2, 2}), row({3, 3})}, {2, 1, 0}, 3);
  CHECK(dtw_knn_classify(t3, make({row({2, 2})}, {0}, 3), k3)[0] == 0);

  DtwConfig par = k3;
  par.jobs = 4;
  CHECK(dtw_knn_classify(t2, t2, k3) == dtw_knn_classify(t2, t2, par));
  CHECK(parse_dtw_mode(to_string(DtwMode::independent)) == DtwMode::independent);
}
