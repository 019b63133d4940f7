#include "tsrep/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace tsrep {

ReportStyle parse_report_style(const std::string& s) {
  if (s == "markdown" || s == "md") return ReportStyle::markdown;
  if (s == "csv") return ReportStyle::csv;
  if (s == "cd-plot-data" || s == "cdplot") return ReportStyle::cdplot;
  if (s == "latex") return ReportStyle::latex;
  throw ConfigError("unknown report style '" + s + "' (expected markdown|csv|cd-plot-data|latex)");
}

std::string format_score(double v) {
  if (!std::isfinite(v)) return "-";
  // the 1e-9 nudge keeps decimal halves such as 0.745 (stored just below) rounding up
  const double cents = std::floor(v * 100.0 + 0.5 + 1e-9);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", cents / 100.0);
  return buf;
}

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// value shown in column (group g, augmented a)
std::optional<double> cell_value(const TableRow& r, int g, bool aug) {
  const auto& primary = aug ? r.augmented : r.plain;
  const auto& other = aug ? r.plain : r.augmented;
  const bool has_primary = std::any_of(primary.begin(), primary.end(), [](const auto& x) { return x.has_value(); });
  return has_primary ? primary[static_cast<std::size_t>(g)] : other[static_cast<std::size_t>(g)];
}

// bold flags computed on the rounded values, so rounded ties are all bold
std::vector<std::array<bool, 6>> bold_flags(const std::vector<TableRow>& rows) {
  std::vector<std::array<bool, 6>> bold(rows.size(), std::array<bool, 6>{});
  for (int col = 0; col < 6; ++col) {
    const int g = col / 2;
    const bool aug = col % 2 == 1;
    std::string best;
    double best_v = -1.0;
    for (const auto& r : rows)
      if (auto v = cell_value(r, g, aug)) {
        const auto s = format_score(*v);
        const double rv = std::stod(s);
        if (rv > best_v) {
          best_v = rv;
          best = s;
        }
      }
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (auto v = cell_value(rows[i], g, aug)) bold[i][static_cast<std::size_t>(col)] = format_score(*v) == best;
  }
  return bold;
}

}  // namespace

std::vector<TableRow> table_rows(const EvaluationReport& report) {
  std::vector<TableRow> rows;
  std::map<std::string, std::size_t> index;
  for (std::size_t m = 0; m < report.configs.size(); ++m) {
    const auto& c = report.configs[m];
    auto [it, inserted] = index.try_emplace(c.model, rows.size());
    if (inserted) rows.push_back(TableRow{c.model, c.type, c.zero_shot, {}, {}});
    auto& row = rows[it->second];
    auto& dst = c.augmented ? row.augmented : row.plain;
    for (int g = 0; g < 3; ++g) {
      const double v = report.group_means(static_cast<Eigen::Index>(m), g);
      if (std::isfinite(v)) dst[static_cast<std::size_t>(g)] = v;
    }
  }
  return rows;
}

std::string render_table_markdown(const std::vector<TableRow>& rows) {
  const auto bold = bold_flags(rows);
  std::ostringstream out;
  out << "| Model | Type | ZS | Univariate No Aug | Univariate Stat+Diff | Multivariate No Aug | "
         "Multivariate Stat+Diff | Overall No Aug | Overall Stat+Diff |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << "| " << r.name << " | " << r.type << " | " << r.zero_shot;
    for (int col = 0; col < 6; ++col) {
      const auto v = cell_value(r, col / 2, col % 2 == 1);
      const auto s = v ? format_score(*v) : std::string("-");
      out << " | " << (bold[i][static_cast<std::size_t>(col)] ? "**" + s + "**" : s);
    }
    out << " |\n";
  }
  return out.str();
}

std::string render_table_latex(const std::vector<TableRow>& rows) {
  const auto bold = bold_flags(rows);
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << r.name << " & " << r.type << " & " << r.zero_shot;
    for (int col = 0; col < 6; ++col) {
      const auto v = cell_value(r, col / 2, col % 2 == 1);
      const auto s = v ? format_score(*v) : std::string("-");
      out << " & " << (bold[i][static_cast<std::size_t>(col)] ? "\\textbf{" + s + "}" : s);
    }
    out << " \\\\\n";
  }
  return out.str();
}

namespace {

std::string render_markdown(const EvaluationReport& r) {
  std::ostringstream out;
  out << "## Accuracy summary\n\n" << render_table_markdown(table_rows(r)) << '\n';

  out << "## Per-dataset accuracy\n\n| Dataset |";
  for (const auto& c : r.configs) out << ' ' << c.id << " |";
  out << "\n|---|";
  for (std::size_t m = 0; m < r.configs.size(); ++m) out << "---|";
  out << '\n';
  for (std::size_t d = 0; d < r.datasets.size(); ++d) {
    out << "| " << r.datasets[d] << " |";
    for (std::size_t m = 0; m < r.configs.size(); ++m) {
      const auto& c = r.cell(m, d);
      out << ' ' << format_score(r.accuracy(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d)))
          << (c.status == RunStatus::fallback ? " (fallback)" : "") << " |";
    }
    out << '\n';
  }

  out << "\n## Average ranks\n\n| Config | Mean rank |\n|---|---|\n";
  for (int m : rank_order(r.ranks)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.ranks(m));
    out << "| " << r.configs[static_cast<std::size_t>(m)].id << " | " << buf << " |\n";
  }
  out << "\n## Critical-difference groups (Wilcoxon signed-rank, Holm, alpha=" << shortest(r.alpha) << ")\n\n";
  if (!r.significance_available) out << "Significance tests need at least 3 datasets and 2 configs.\n";
  if (r.significance_available && r.cd_groups.empty()) out << "No groups: every adjacent pair is significantly different.\n";
  for (const auto& g : r.cd_groups) {
    out << "- ";
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? ", " : "") << r.configs[static_cast<std::size_t>(g[i])].id;
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const EvaluationReport& r) {
  std::ostringstream out;
  out << "config,dataset,kind,status,accuracy,balanced_accuracy\n";
  for (std::size_t m = 0; m < r.configs.size(); ++m)
    for (std::size_t d = 0; d < r.datasets.size(); ++d) {
      const auto& c = r.cell(m, d);
      const auto kind = r.kinds.empty() || r.kinds[d] == SuiteKind::univariate ? "univariate" : "multivariate";
      out << r.configs[m].id << ',' << r.datasets[d] << ',' << kind << ',' << to_string(c.status) << ','
          << (c.accuracy ? shortest(*c.accuracy) : "") << ','
          << (c.balanced_accuracy ? shortest(*c.balanced_accuracy) : "") << '\n';
    }
  return out.str();
}

std::string render_cdplot(const EvaluationReport& r) {
  std::ostringstream out;
  out << "# cd-plot-data v1\n";
  out << "alpha," << shortest(r.alpha) << '\n';
  out << "datasets," << r.datasets.size() << '\n';
  for (int m : rank_order(r.ranks))
    out << "rank," << r.configs[static_cast<std::size_t>(m)].id << ',' << shortest(r.ranks(m)) << '\n';
  for (const auto& g : r.cd_groups) {
    out << "group," << shortest(r.ranks(g.front())) << ',' << shortest(r.ranks(g.back())) << ',';
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? ";" : "") << r.configs[static_cast<std::size_t>(g[i])].id;
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    while (!tok.empty() && (tok.back() == '\r' || tok.back() == ' ')) tok.pop_back();
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    out.push_back(tok);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw DataError("csv line " + std::to_string(line) + ": cannot parse number '" + s + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream b;
  b << in.rdbuf();
  return b.str();
}

}  // namespace

std::string render_report(const EvaluationReport& report, ReportStyle style) {
  switch (style) {
    case ReportStyle::markdown: return render_markdown(report);
    case ReportStyle::csv: return render_csv(report);
    case ReportStyle::cdplot: return render_cdplot(report);
    case ReportStyle::latex: return render_table_latex(table_rows(report));
  }
  return {};
}

EvaluationReport parse_scores_csv(const std::string& text, double alpha) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    rows.push_back(split_csv(line));
  }
  if (rows.size() < 2) throw DataError("scores csv: need a header and at least one row");
  const auto& header = rows.front();
  auto col = [&](const std::string& name) -> int {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };

  EvaluationReport r;
  const int ci = col("config"), di = col("dataset"), ai = col("accuracy");
  if (ci >= 0 && di >= 0 && ai >= 0) {
    const int ki = col("kind"), si = col("status"), bi = col("balanced_accuracy");
    std::map<std::string, std::size_t> cfg_ix, ds_ix;
    struct Entry { std::size_t c, d; RunResult res; };
    std::vector<Entry> entries;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != header.size()) throw DataError("scores csv line " + std::to_string(i + 1) + ": wrong column count");
      auto [cit, cnew] = cfg_ix.try_emplace(row[static_cast<std::size_t>(ci)], cfg_ix.size());
      if (cnew) r.configs.push_back(ConfigInfo{cit->first, cit->first, false, "-", "-"});
      auto [dit, dnew] = ds_ix.try_emplace(row[static_cast<std::size_t>(di)], ds_ix.size());
      if (dnew) {
        r.datasets.push_back(dit->first);
        r.kinds.push_back(ki >= 0 && row[static_cast<std::size_t>(ki)] == "multivariate" ? SuiteKind::multivariate
                                                                                        : SuiteKind::univariate);
      }
      RunResult res;
      res.model_config = cit->first;
      res.dataset = dit->first;
      if (si >= 0) res.status = parse_run_status(row[static_cast<std::size_t>(si)]);
      res.accuracy = parse_number(row[static_cast<std::size_t>(ai)], i + 1);
      if (bi >= 0 && !row[static_cast<std::size_t>(bi)].empty())
        res.balanced_accuracy = parse_number(row[static_cast<std::size_t>(bi)], i + 1);
      entries.push_back({cit->second, dit->second, std::move(res)});
    }
    r.cells.assign(r.configs.size() * r.datasets.size(), RunResult{});
    std::vector<char> filled(r.cells.size(), 0);
    for (auto& e : entries) {
      const auto at = e.c * r.datasets.size() + e.d;
      if (filled[at]) throw DataError("scores csv: duplicate cell " + e.res.model_config + "/" + e.res.dataset);
      filled[at] = 1;
      r.cells[at] = std::move(e.res);
    }
    if (std::find(filled.begin(), filled.end(), 0) != filled.end()) throw DataError("scores csv: missing cells");
    finalize_report(r, alpha);
    return r;
  }

  // wide: dataset,<config>...
  if (header.size() < 2) throw DataError("scores csv: need at least one config column");
  std::vector<std::string> configs(header.begin() + 1, header.end());
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> vals;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != header.size()) throw DataError("scores csv line " + std::to_string(i + 1) + ": wrong column count");
    datasets.push_back(row[0]);
    std::vector<double> v;
    for (std::size_t j = 1; j < row.size(); ++j) v.push_back(parse_number(row[j], i + 1));
    vals.push_back(std::move(v));
  }
  Matrix scores(static_cast<Eigen::Index>(configs.size()), static_cast<Eigen::Index>(datasets.size()));
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (std::size_t c = 0; c < configs.size(); ++c)
      scores(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(d)) = vals[d][c];
  return report_from_scores(configs, datasets, scores, alpha);
}

EvaluationReport read_scores_csv(const std::string& path, double alpha) {
  return parse_scores_csv(read_file(path), alpha);
}

std::vector<std::pair<std::string, double>> read_metric_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<std::pair<std::string, double>> out;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    const auto f = split_csv(line);
    if (f.size() != 2) throw DataError("metric csv line " + std::to_string(lineno) + ": expected model_id,value");
    if (lineno == 1 && f[0] == "model_id") continue;
    out.emplace_back(f[0], parse_number(f[1], lineno));
  }
  return out;
}

}  // namespace tsrep
