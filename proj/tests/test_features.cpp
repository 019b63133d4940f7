#include "oracles.hpp"

#include "tsrep/augment.hpp"
#include "tsrep/synthetic.hpp"

#include <doctest.h>

#include <random>

using namespace tsrep;

namespace {

const Matrix kTwoByTwo = (Matrix(2, 2) << 1, 2, 3, 4).finished();

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

}  // namespace

TEST_CASE("sequence pooling") {
  CHECK(aggregate_sequence(kTwoByTwo, SequencePooling::mean) == vec({2, 3}));
  CHECK(aggregate_sequence(kTwoByTwo, SequencePooling::max) == vec({3, 4}));
  CHECK(aggregate_sequence(kTwoByTwo, SequencePooling::last) == vec({3, 4}));
  const Matrix one = (Matrix(1, 3) << 1, -2, 5).finished();
  for (auto s : {SequencePooling::mean, SequencePooling::max, SequencePooling::last})
    CHECK(aggregate_sequence(one, s) == vec({1, -2, 5}));

  const Matrix m = random_matrix(7, 4, 3);
  const Matrix rev = m.colwise().reverse();
  CHECK((aggregate_sequence(m, SequencePooling::mean) - aggregate_sequence(rev, SequencePooling::mean)).norm() < 1e-14);
  CHECK(aggregate_sequence(m, SequencePooling::last) != aggregate_sequence(rev, SequencePooling::last));
}

TEST_CASE("normalize_layer_vector") {
  const Vector z = normalize_layer_vector(vec({1, 2, 3}));
  const double s = std::sqrt(2.0 / 3.0);
  CHECK(z(0) == doctest::Approx(-1.0 / s).epsilon(1e-15));
  CHECK(z(1) == 0.0);
  CHECK(z(2) == doctest::Approx(1.0 / s).epsilon(1e-15));
  CHECK(normalize_layer_vector(vec({5, 5})) == Vector::Zero(2));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Vector v = random_matrix(9, 1, seed) * 100.0;
    const Vector n = normalize_layer_vector(v);
    CHECK(std::abs(n.mean()) < 1e-12);
    CHECK(std::abs(std::sqrt(n.squaredNorm() / 9.0) - 1.0) < 1e-9);
  }
}

TEST_CASE("layer pooling") {
  const std::vector<Vector> two = {vec({1, 2}), vec({3, 4})};
  CHECK(aggregate_layers(two, LayerPooling::concat, false) == vec({1, 2, 3, 4}));
  CHECK(aggregate_layers(two, LayerPooling::mean, false) == vec({2, 3}));
  CHECK(aggregate_layers(two, LayerPooling::max, false) == vec({3, 4}));
  CHECK(aggregate_layers(two, LayerPooling::last, false) == vec({3, 4}));

  const std::vector<Vector> single = {vec({1, 4, 2})};
  for (auto s : {LayerPooling::concat, LayerPooling::mean, LayerPooling::max, LayerPooling::last}) {
    CHECK(aggregate_layers(single, s, false) == single[0]);
    CHECK(aggregate_layers(single, s, true) == normalize_layer_vector(single[0]));
  }
  const std::vector<Vector> ragged = {vec({1}), vec({1, 2})};
  CHECK_THROWS_AS(aggregate_layers(ragged, LayerPooling::mean, false), DataError);
  CHECK(aggregate_layers(ragged, LayerPooling::concat, false).size() == 3);
}

TEST_CASE("variate pooling") {
  const std::vector<Vector> e = {vec({1, 0}), vec({0, 1})};
  CHECK(aggregate_variates(e, VariatePooling::max) == vec({1, 1}));
  CHECK(aggregate_variates(e, VariatePooling::mean) == vec({0.5, 0.5}));
  const std::vector<Vector> one = {vec({3, 1})};
  for (auto s : {VariatePooling::concat, VariatePooling::mean, VariatePooling::max})
    CHECK(aggregate_variates(one, s) == one[0]);

  std::vector<Vector> parts;
  for (int v = 0; v < 3; ++v) parts.push_back(random_matrix(5, 1, v));
  const Vector c = aggregate_variates(parts, VariatePooling::concat);
  REQUIRE(c.size() == 15);
  for (int v = 0; v < 3; ++v) CHECK(c.segment(5 * v, 5) == parts[v]);
}

TEST_CASE("strategy names round trip") {
  for (auto s : {SequencePooling::mean, SequencePooling::max, SequencePooling::last})
    CHECK(parse_sequence_pooling(to_string(s)) == s);
  for (auto s : {LayerPooling::concat, LayerPooling::mean, LayerPooling::max, LayerPooling::last})
    CHECK(parse_layer_pooling(to_string(s)) == s);
  for (auto s : {VariatePooling::concat, VariatePooling::mean, VariatePooling::max})
    CHECK(parse_variate_pooling(to_string(s)) == s);
  CHECK_THROWS_AS(parse_layer_pooling("sum"), ConfigError);
}

TEST_CASE("embed_sample shapes and composition") {
  MockProvider p(ProviderSpec{});
  const TimeSeries two(random_matrix(2, 64, 1));
  CHECK(embed_sample(two, p, AggregationConfig{}).size() == 256);
  CHECK(embed_sample(TimeSeries(random_matrix(1, 40, 2)), p, {}).size() ==
        embed_sample(TimeSeries(random_matrix(1, 100, 3)), p, {}).size());

  ProviderSpec small;
  small.layers = 2;
  MockProvider p2(small);
  const TimeSeries x(random_matrix(1, 50, 4));
  AggregationConfig cfg{SequencePooling::last, LayerPooling::last, VariatePooling::mean, true};
  const auto hs = p2.extract(RowVector(x.variate(0)));
  const Matrix& final_layer = hs.layers.back();
  const Vector last_row = final_layer.row(final_layer.rows() - 1).transpose();
  CHECK(embed_sample(x, p2, cfg) == normalize_layer_vector(last_row));
}

TEST_CASE("variate permutation covariance") {
  MockProvider p(ProviderSpec{});
  const Matrix m = random_matrix(3, 48, 8);
  Matrix perm(3, 48);
  perm << m.row(2), m.row(0), m.row(1);
  const Vector a = embed_sample(TimeSeries(m), p, {});
  const Vector b = embed_sample(TimeSeries(perm), p, {});
  const auto F = a.size() / 3;
  CHECK(b.segment(0, F) == a.segment(2 * F, F));
  CHECK(b.segment(F, F) == a.segment(0, F));
  CHECK(b.segment(2 * F, F) == a.segment(F, F));
  AggregationConfig mx;
  mx.variate = VariatePooling::max;
  CHECK(embed_sample(TimeSeries(m), p, mx) == embed_sample(TimeSeries(perm), p, mx));
  AggregationConfig mn;
  mn.variate = VariatePooling::mean;
  CHECK((embed_sample(TimeSeries(m), p, mn) - embed_sample(TimeSeries(perm), p, mn)).norm() < 1e-14);
}

TEST_CASE("patch statistics examples") {
  const RowVector x = (RowVector(4) << 1, 2, 3, 4).finished();
  CHECK(patch_statistics_row(x, 2) == vec({1.5, 0.5, 1, 2, 3.5, 0.5, 3, 4}));
  const Vector c = patch_statistics_row(RowVector::Constant(10, 2.5), 4);
  for (int i = 0; i < 4; ++i) CHECK(c.segment<4>(4 * i) == vec({2.5, 0, 2.5, 2.5}));

  const auto chunks = oracle::partition(3, 8);
  CHECK(chunks[2] == std::vector<Eigen::Index>{0});
  CHECK(chunks[5] == std::vector<Eigen::Index>{1});
  CHECK(chunks[7] == std::vector<Eigen::Index>{2});
  for (int i : {0, 1, 3, 4, 6}) CHECK(chunks[i].empty());
  const RowVector short_x = (RowVector(3) << 4, -1, 9).finished();
  const Vector s = patch_statistics_row(short_x, 8);
  REQUIRE(s.size() == 32);
  const auto expect = oracle::patch_stats({4, -1, 9}, 8);
  for (int i = 0; i < 32; ++i) CHECK(s(i) == expect[i]);
  CHECK(s.segment<4>(12) == vec({4, 0, 4, 4}));  // chunk 3 borrows chunk 2
}

TEST_CASE("patch statistics match the partition oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto T = static_cast<Eigen::Index>(1 + rng() % 40);
    const int k = static_cast<int>(1 + rng() % 33);
    const Matrix m = random_matrix(1, T, trial);
    const std::vector<double> xs(m.data(), m.data() + T);
    const Vector got = patch_statistics_row(m.row(0), k);
    const auto expect = oracle::patch_stats(xs, k);
    REQUIRE(got.size() == static_cast<Eigen::Index>(expect.size()));
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(got(static_cast<Eigen::Index>(i)) == doctest::Approx(expect[i]).epsilon(1e-12));
  }
}

TEST_CASE("patch statistics are affine equivariant") {
  const Matrix m = random_matrix(1, 77, 6);
  const Vector s = patch_statistics_row(m.row(0), 8);
  for (double a : {0.5, 2.0, 10.0})
    for (double b : {-3.0, 0.0, 7.0}) {
      const Vector t = patch_statistics_row((a * m.row(0).array() + b).matrix(), 8);
      for (int i = 0; i < 8; ++i) {
        CHECK(t(4 * i) == doctest::Approx(a * s(4 * i) + b).epsilon(1e-12));
        CHECK(t(4 * i + 1) == doctest::Approx(a * s(4 * i + 1)).epsilon(1e-12));
        CHECK(t(4 * i + 2) == doctest::Approx(a * s(4 * i + 2) + b).epsilon(1e-12));
        CHECK(t(4 * i + 3) == doctest::Approx(a * s(4 * i + 3) + b).epsilon(1e-12));
      }
    }
}

TEST_CASE("toy patch means track the baseline") {
  const auto toy = generate_sine_toy(256, 3);
  std::vector<double> avg, a;
  for (std::size_t i = 0; i < toy.dataset.size(); ++i) {
    const Vector s = patch_statistics(toy.dataset.samples[i], 8);
    double sum = 0;
    for (int c = 0; c < 8; ++c) {
      CHECK(std::abs(s(4 * c) - toy.baselines[i]) <= 1.0);
      sum += s(4 * c);
    }
    avg.push_back(sum / 8);
    a.push_back(toy.baselines[i]);
  }
  const Eigen::Map<const Vector> x(avg.data(), 256), y(a.data(), 256);
  const Vector xc = x.array() - x.mean(), yc = y.array() - y.mean();
  CHECK(xc.dot(yc) / (xc.norm() * yc.norm()) > 0.999);
}

TEST_CASE("difference") {
  const TimeSeries x(Matrix((Matrix(1, 3) << 1, 3, 6).finished()));
  CHECK(difference(x).values() == Matrix((Matrix(1, 2) << 2, 3).finished()));
  const double c = 0.37;
  const TimeSeries ramp(Matrix((Matrix(1, 4) << 0, c, 2 * c, 3 * c).finished()));
  const Matrix d = difference(ramp).values();
  CHECK((d.array() - c).abs().maxCoeff() < 1e-12);
  Matrix quad(1, 10);
  for (int t = 0; t < 10; ++t) quad(0, t) = 0.5 * t * t - 3 * t + 1;
  const Matrix dd = difference(difference(TimeSeries(quad))).values();
  CHECK(dd.cols() == 8);
  CHECK(dd.maxCoeff() - dd.minCoeff() < 1e-12);
  CHECK_THROWS_AS(difference(TimeSeries(Matrix::Ones(1, 1))), DataError);
}

TEST_CASE("build_features widths") {
  MockProvider p(ProviderSpec{});
  const TimeSeries x(random_matrix(1, 90, 11));
  const AggregationConfig agg;
  CHECK(build_features(x, p, agg, AugmentConfig{}) == embed_sample(x, p, agg));
  CHECK(build_features(x, p, agg, AugmentConfig{true, false, 8}).size() == 160);
  CHECK(build_features(x, p, agg, AugmentConfig{true, true, 8}).size() == 288);
  CHECK(build_features(x, p, agg, AugmentConfig{false, true, 8}).size() == 256);
  const TimeSeries mv(random_matrix(3, 90, 12));
  CHECK(build_features(mv, p, agg, AugmentConfig{true, false, 4}).size() == 3 * 128 + 3 * 16);
}

TEST_CASE("feature matrix is independent of job count") {
  const auto toy = generate_sine_toy(40, 2);
  MockProvider p(ProviderSpec{});
  const AugmentConfig aug{true, true, 8};
  CHECK(build_feature_matrix(toy.dataset, p, {}, aug, 1) == build_feature_matrix(toy.dataset, p, {}, aug, 6));
}
