#include "tsrep/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace tsrep {

TimeSeries::TimeSeries(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw DataError("time series must have at least one variate and one step");
  if (!values_.allFinite()) throw DataError("non-finite value in time series");
}

const char* to_string(Split s) { return s == Split::train ? "train" : "test"; }

Split parse_split(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "test") return Split::test;
  throw ConfigError("unknown split '" + s + "'");
}

Eigen::Index LabeledDataset::max_length() const {
  Eigen::Index m = 0;
  for (const auto& s : samples) m = std::max(m, s.length());
  return m;
}

void LabeledDataset::validate() const {
  if (samples.empty()) throw DataError(name + ": dataset is empty");
  if (samples.size() != labels.size())
    throw DataError(name + ": sample/label count mismatch");
  if (num_classes < 2) throw DataError(name + ": need at least 2 classes");
  const auto v = samples.front().variates();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].variates() != v) throw DataError(name + ": inconsistent variate count");
    if (labels[i] < 0 || labels[i] >= num_classes)
      throw DataError(name + ": label out of range");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(const std::string& name, std::size_t line, const std::string& what) {
  throw DataError(name + ":" + std::to_string(line) + ": " + what);
}

double parse_value(std::string_view tok, const std::string& name, std::size_t line) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
    parse_fail(name, line, "cannot parse value '" + std::string(tok) + "'");
  if (!std::isfinite(v)) parse_fail(name, line, "non-finite value");
  return v;
}

}  // namespace

LabeledDataset parse_dataset(const std::string& text, const std::string& name, Split split,
                             LabelMap* labels) {
  LabeledDataset ds;
  ds.name = name;
  ds.split = split;
  LabelMap local;
  LabelMap& label_ids = labels ? *labels : local;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) parse_fail(name, lineno, "missing ':' after label");
    const std::string label(trim(line.substr(0, colon)));
    if (label.empty()) parse_fail(name, lineno, "empty label");

    const auto rows = split_on(line.substr(colon + 1), ';');
    std::vector<std::vector<double>> parsed;
    for (auto r : rows) {
      std::vector<double> vals;
      for (auto tok : split_on(r, ',')) vals.push_back(parse_value(tok, name, lineno));
      if (!parsed.empty() && vals.size() != parsed.front().size())
        parse_fail(name, lineno, "variates differ in length");
      parsed.push_back(std::move(vals));
    }
    Matrix m(static_cast<Eigen::Index>(parsed.size()),
             static_cast<Eigen::Index>(parsed.front().size()));
    for (Eigen::Index v = 0; v < m.rows(); ++v)
      for (Eigen::Index t = 0; t < m.cols(); ++t) m(v, t) = parsed[v][t];

    if (!ds.samples.empty() && m.rows() != ds.samples.front().variates())
      parse_fail(name, lineno, "inconsistent variate count");

    auto [it, inserted] = label_ids.try_emplace(label, static_cast<int>(label_ids.size()));
    ds.labels.push_back(it->second);
    ds.samples.emplace_back(std::move(m));
  }
  if (ds.samples.empty()) throw DataError(name + ": empty file");
  ds.num_classes = static_cast<int>(label_ids.size());
  ds.validate();
  return ds;
}

LabeledDataset load_dataset(const std::string& path, Split split, LabelMap* labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
  return parse_dataset(buf.str(), stem, split, labels);
}

SuiteEntry load_split_pair(const std::string& name, const std::string& train_path,
                           const std::string& test_path) {
  LabelMap labels;
  SuiteEntry e;
  e.train = load_dataset(train_path, Split::train, &labels);
  e.test = load_dataset(test_path, Split::test, &labels);
  e.train.name = e.test.name = name;
  e.train.num_classes = e.test.num_classes = static_cast<int>(labels.size());
  if (e.train.variates() != e.test.variates())
    throw DataError(name + ": train and test variate counts differ");
  e.kind = e.train.variates() > 1 ? SuiteKind::multivariate : SuiteKind::univariate;
  return e;
}

std::string format_dataset(const LabeledDataset& ds) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out += std::to_string(ds.labels[i]);
    out += ':';
    const auto& m = ds.samples[i].values();
    for (Eigen::Index v = 0; v < m.rows(); ++v) {
      if (v > 0) out += ';';
      for (Eigen::Index t = 0; t < m.cols(); ++t) {
        if (t > 0) out += ',';
        const auto res = std::to_chars(buf, buf + sizeof(buf), m(v, t));
        out.append(buf, res.ptr);
      }
    }
    out += '\n';
  }
  return out;
}

void write_dataset(const LabeledDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write dataset file '" + path + "'");
  out << format_dataset(ds);
  if (!out) throw DataError("write failed for '" + path + "'");
}

BenchmarkSuite filter_by_length(const BenchmarkSuite& suite, std::size_t max_len) {
  if (max_len == 0) return suite;
  BenchmarkSuite out;
  for (const auto& e : suite.datasets) {
    const auto len = std::max(e.train.max_length(), e.test.max_length());
    if (static_cast<std::size_t>(len) <= max_len) out.datasets.push_back(e);
  }
  return out;
}

}  // namespace tsrep
