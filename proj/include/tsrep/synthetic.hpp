#pragma once

#include "tsrep/core.hpp"

#include <cstdint>

namespace tsrep {

inline constexpr Eigen::Index kToyLength = 256;
inline constexpr int kToyClasses = 4;
inline constexpr double kToyBaselineMin = -2.0;
inline constexpr double kToyBaselineMax = 2.0;

/// Baseline-shifted sine waves y_t = sin(5 t) + a on a shared grid
/// t_j = 2 pi j / 256. Labels are quartile bins of a.
struct SineToy {
  LabeledDataset dataset;
  std::vector<double> baselines;
};

SineToy generate_sine_toy(std::size_t n, std::uint64_t seed);

struct Blobs {
  Matrix features;  // N x dims
  std::vector<int> labels;
};

/// Two unit-variance Gaussian clusters centred at -/+ separation/2 along the
/// first axis; class 0 first, then class 1.
Blobs generate_blobs(std::size_t n_per_class, std::size_t dims, double separation,
                     std::uint64_t seed);

/// Small labeled suite for smoke runs and ablations: baseline-shifted sines,
/// sine frequencies, and a two-variate waveform-shape task. Each dataset has
/// `n_per_split` train and test samples.
BenchmarkSuite demo_suite(std::size_t n_per_split, std::uint64_t seed);

}  // namespace tsrep
