#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tsrep {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Base class for malformed or inconsistent input data (exit code 2 at the CLI).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or arguments (exit code 1 at the CLI).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One labeled sample: V variates (rows) x T steps (columns).
class TimeSeries {
public:
  TimeSeries() = default;
  explicit TimeSeries(Matrix values);

  const Matrix& values() const { return values_; }
  Eigen::Index variates() const { return values_.rows(); }
  Eigen::Index length() const { return values_.cols(); }
  auto variate(Eigen::Index v) const { return values_.row(v); }

  friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
    return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
           a.values_ == b.values_;
  }

private:
  Matrix values_;
};

enum class Split { train, test };

const char* to_string(Split s);
Split parse_split(const std::string& s);

struct LabeledDataset {
  std::string name;
  std::vector<TimeSeries> samples;
  std::vector<int> labels;
  int num_classes = 0;
  Split split = Split::train;

  std::size_t size() const { return samples.size(); }
  Eigen::Index variates() const { return samples.empty() ? 0 : samples.front().variates(); }
  Eigen::Index max_length() const;

  /// Throws DataError when any dataset invariant is violated.
  void validate() const;
};

enum class SuiteKind { univariate, multivariate };

struct SuiteEntry {
  LabeledDataset train;
  LabeledDataset test;
  SuiteKind kind = SuiteKind::univariate;

  const std::string& name() const { return train.name; }
};

struct BenchmarkSuite {
  std::vector<SuiteEntry> datasets;
};

/// Raw label string -> class id. Sharing one map across the train and test
/// files of a dataset keeps their class ids consistent.
using LabelMap = std::unordered_map<std::string, int>;

/// Reads the one-sample-per-line text format. Labels are remapped to [0, K)
/// in order of first occurrence (continuing `labels` when given).
LabeledDataset load_dataset(const std::string& path, Split split = Split::train,
                            LabelMap* labels = nullptr);
LabeledDataset parse_dataset(const std::string& text, const std::string& name,
                             Split split = Split::train, LabelMap* labels = nullptr);

/// Writes values in shortest round-trip form, so reloading is bit-exact.
void write_dataset(const LabeledDataset& ds, const std::string& path);
std::string format_dataset(const LabeledDataset& ds);

/// Loads both splits with a shared label map; both get K = number of distinct labels.
SuiteEntry load_split_pair(const std::string& name, const std::string& train_path,
                           const std::string& test_path);

/// max_len == 0 disables filtering.
BenchmarkSuite filter_by_length(const BenchmarkSuite& suite, std::size_t max_len);

}  // namespace tsrep
