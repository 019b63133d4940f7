#pragma once

#include <span>

namespace tsrep {

double accuracy(std::span<const int> pred, std::span<const int> truth);

/// Unweighted mean of per-class recall over the classes that occur in truth.
double balanced_accuracy(std::span<const int> pred, std::span<const int> truth);

}  // namespace tsrep
