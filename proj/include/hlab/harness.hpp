#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlab/numerics.hpp"

namespace hlab {

enum class Suite { sym, solve, capacity, bm, abp, degiorgi, liouville, all };
enum class ReportFormat { csv, jsonl };

Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite) noexcept;
ReportFormat parse_format(std::string_view name);

struct ExperimentConfig {
  Suite suite = Suite::bm;
  int n = 2;
  int k = 1;
  double R = 1.0;
  GridSpec grid;
  /// Unset values fall back to the reference sweeps of each suite.
  std::optional<double> lambda;
  std::optional<double> beta;
  std::optional<double> p;
  std::string family = "log";
  /// Overrides the default relative tolerance of equality checks.
  std::optional<double> tolerance;
  std::string out;
  ReportFormat format = ReportFormat::csv;
  /// "constant-phi" adds a De Giorgi fixture with no valid fit.
  std::string fixture;
  /// Record per-check runtime; off by default so reports are byte-identical across runs.
  bool timing = false;
};

/// Throws Error(invalid_argument / unsupported_dimension) when the config violates the
/// preconditions of the selected suite.
void validate_config(const ExperimentConfig& cfg);

/// Applies the keys of a JSON object on top of base. Errors name the offending line.
ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base = {});

struct ReportRow {
  std::string suite;
  std::string check;
  std::string anchor;
  std::string inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  double ms = 0.0;
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SuiteResult {
  std::vector<ReportRow> rows;
  /// 0 all pass, 1 some check failed, 2 invalid config.
  int exit_code = 0;
  std::string error;
};

/// Runs the selected suite. Rows are sorted by (suite, check).
SuiteResult run_suite(const ExperimentConfig& cfg);

/// Report text; throws invalid_argument on empty rows.
std::string format_report(const std::vector<ReportRow>& rows, ReportFormat format);
/// Writes the report to path (stdout when empty); throws io_error when the path is unwritable.
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path);
/// Parses JSON-lines produced by format_report.
std::vector<ReportRow> read_report_jsonl(const std::string& text);

}  // namespace hlab
