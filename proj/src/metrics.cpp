#include "tsrep/metrics.hpp"

#include "tsrep/core.hpp"

#include <map>

namespace tsrep {

namespace {
void check(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) throw DataError("metrics: prediction/truth length mismatch");
  if (truth.empty()) throw DataError("metrics: empty input");
}
}  // namespace

double accuracy(std::span<const int> pred, std::span<const int> truth) {
  check(pred, truth);
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == truth[i];
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

double balanced_accuracy(std::span<const int> pred, std::span<const int> truth) {
  check(pred, truth);
  std::map<int, std::pair<std::size_t, std::size_t>> per_class;  // hits, total
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto& [hit, total] = per_class[truth[i]];
    ++total;
    hit += pred[i] == truth[i];
  }
  double sum = 0.0;
  for (const auto& [cls, ht] : per_class) sum += static_cast<double>(ht.first) / static_cast<double>(ht.second);
  return sum / static_cast<double>(per_class.size());
}

}  // namespace tsrep
