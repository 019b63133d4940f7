#include "tsrep/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tsrep {

SineToy generate_sine_toy(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("generate_sine_toy: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> baseline(kToyBaselineMin, kToyBaselineMax);

  RowVector wave(kToyLength);
  for (Eigen::Index j = 0; j < kToyLength; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / kToyLength;
    wave(j) = std::sin(5.0 * t);
  }

  SineToy toy;
  toy.dataset.name = "sine_toy";
  toy.dataset.num_classes = kToyClasses;
  toy.baselines.resize(n);
  for (auto& a : toy.baselines) a = baseline(rng);

  for (double a : toy.baselines) {
    Matrix m = (wave.array() + a).matrix();
    toy.dataset.samples.emplace_back(std::move(m));
  }

  // quartile bins by rank so every class is populated when n >= 4
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return toy.baselines[x] < toy.baselines[y]; });
  toy.dataset.labels.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r)
    toy.dataset.labels[order[r]] = static_cast<int>(r * kToyClasses / n);
  return toy;
}

Blobs generate_blobs(std::size_t n_per_class, std::size_t dims, double separation,
                     std::uint64_t seed) {
  if (n_per_class == 0 || dims == 0) throw ConfigError("generate_blobs: empty shape");
  if (separation < 0) throw ConfigError("generate_blobs: separation must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  const auto n = static_cast<Eigen::Index>(2 * n_per_class);
  Blobs b;
  b.features.resize(n, static_cast<Eigen::Index>(dims));
  b.labels.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const int cls = i < static_cast<Eigen::Index>(n_per_class) ? 0 : 1;
    b.labels[static_cast<std::size_t>(i)] = cls;
    for (Eigen::Index d = 0; d < b.features.cols(); ++d) b.features(i, d) = noise(rng);
    b.features(i, 0) += (cls == 0 ? -0.5 : 0.5) * separation;
  }
  return b;
}

namespace {

LabeledDataset take(const LabeledDataset& ds, std::size_t begin, std::size_t end, Split split) {
  LabeledDataset out;
  out.name = ds.name;
  out.num_classes = ds.num_classes;
  out.split = split;
  for (std::size_t i = begin; i < end; ++i) {
    out.samples.push_back(ds.samples[i]);
    out.labels.push_back(ds.labels[i]);
  }
  return out;
}

SuiteEntry split_half(const LabeledDataset& ds, SuiteKind kind) {
  const auto half = ds.size() / 2;
  return SuiteEntry{take(ds, 0, half, Split::train), take(ds, half, ds.size(), Split::test), kind};
}

double wave(int shape, double phase) {
  const double u = phase / (2.0 * std::numbers::pi);
  const double frac = u - std::floor(u);
  switch (shape) {
    case 0: return std::sin(phase);
    case 1: return frac < 0.5 ? 1.0 : -1.0;           // square
    default: return 4.0 * std::abs(frac - 0.5) - 1.0;  // triangle
  }
}

}  // namespace

BenchmarkSuite demo_suite(std::size_t n_per_split, std::uint64_t seed) {
  if (n_per_split < 4) throw ConfigError("demo_suite: need at least 4 samples per split");
  BenchmarkSuite suite;
  const std::size_t n = 2 * n_per_split;

  auto toy = generate_sine_toy(n, seed);
  toy.dataset.name = "sine_baseline";
  suite.datasets.push_back(split_half(toy.dataset, SuiteKind::univariate));

  std::mt19937_64 rng(seed ^ 0xf00dULL);
  std::normal_distribution<double> noise(0.0, 0.2);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  LabeledDataset freq;
  freq.name = "sine_frequency";
  freq.num_classes = 3;
  for (std::size_t i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % 3);
    const double f = 2.0 + 2.0 * cls;
    const double p0 = phase(rng);
    Matrix m(1, 96);
    for (Eigen::Index t = 0; t < m.cols(); ++t)
      m(0, t) = std::sin(f * 2.0 * std::numbers::pi * static_cast<double>(t) / 96.0 + p0) + noise(rng);
    freq.samples.emplace_back(std::move(m));
    freq.labels.push_back(cls);
  }
  suite.datasets.push_back(split_half(freq, SuiteKind::univariate));

  LabeledDataset shapes;
  shapes.name = "waveform_shapes";
  shapes.num_classes = 3;
  for (std::size_t i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % 3);
    const double p0 = phase(rng);
    Matrix m(2, 128);
    for (Eigen::Index t = 0; t < m.cols(); ++t) {
      const double ph = 4.0 * 2.0 * std::numbers::pi * static_cast<double>(t) / 128.0 + p0;
      m(0, t) = wave(cls, ph) + noise(rng);
      m(1, t) = std::sin(ph) + noise(rng);  // uninformative channel
    }
    shapes.samples.emplace_back(std::move(m));
    shapes.labels.push_back(cls);
  }
  suite.datasets.push_back(split_half(shapes, SuiteKind::multivariate));
  return suite;
}

}  // namespace tsrep
