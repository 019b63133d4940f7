#pragma once

#include "tsrep/benchmark.hpp"

#include <array>
#include <optional>
#include <string>

namespace tsrep {

enum class ReportStyle { markdown, csv, cdplot, latex };
ReportStyle parse_report_style(const std::string& s);

/// One model row of the summary table: mean accuracy per group
/// (univariate, multivariate, overall) without and with augmentation. Rows
/// with a single variant show the same value in both columns.
struct TableRow {
  std::string name;
  std::string type = "-";
  std::string zero_shot = "-";
  std::array<std::optional<double>, 3> plain;
  std::array<std::optional<double>, 3> augmented;
};

std::vector<TableRow> table_rows(const EvaluationReport& report);

/// Half-up rounding to two decimals ("0.745" -> "0.75").
std::string format_score(double v);

std::string render_table_markdown(const std::vector<TableRow>& rows);
std::string render_table_latex(const std::vector<TableRow>& rows);

std::string render_report(const EvaluationReport& report, ReportStyle style);

/// Per-cell scores. Long form (`config,dataset,...,accuracy` header) or wide
/// form (`dataset,<config1>,<config2>,...`, one row per dataset).
EvaluationReport read_scores_csv(const std::string& path, double alpha);
EvaluationReport parse_scores_csv(const std::string& text, double alpha);

/// `model_id,crps` rows.
std::vector<std::pair<std::string, double>> read_metric_csv(const std::string& path);

}  // namespace tsrep
