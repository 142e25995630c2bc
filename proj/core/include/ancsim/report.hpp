#pragma once

#include <string>
#include <vector>

#include "ancsim/metrics.hpp"
#include "ancsim/scenario.hpp"
#include "ancsim/statistics.hpp"

namespace ancsim {

/// Write the per-sample series as CSV: header
/// n,x,d,y,y_out,e,mode,gamma,y_power, one row per sample, 17 significant
/// digits, LF line endings. I/O failures throw IoError naming the path.
void emit_csv(const MetricsLog& log, const std::string& path);

/// Read back a CSV written by emit_csv (series only; the summary is left to
/// the caller to recompute).
MetricsLog parse_csv(const std::string& path);

/// Timeseries as a JSON document with one array per column.
void emit_timeseries_json(const MetricsLog& log, const std::string& path);

/// Statistics snapshot as JSON (matrices as row-major nested arrays).
std::string statistics_to_json(const StatisticsSnapshot& snap,
                               const std::string& method, double rho2,
                               int indent = 2);
StatisticsSnapshot statistics_from_json(const std::string& text);
StatisticsSnapshot load_statistics_file(const std::string& path);

/// Full run report: version and generator identifiers, normalized config,
/// verbatim config text, summary, and artifact paths. The report plus the
/// library version reproduce the run.
std::string run_report_json(const ScenarioConfig& cfg, const MetricsLog& log,
                            const std::vector<std::string>& artifact_paths,
                            int indent = 2);

struct RunComparison {
  std::vector<std::string> labels;
  std::vector<RunSummary> summaries;
};

/// Run each scenario and tabulate the figures of merit. Scenarios must share
/// the noise spec, both paths, and the sample count (ComparabilityError
/// otherwise); member runs execute in parallel.
RunComparison compare_runs(const std::vector<ScenarioConfig>& configs);

std::string comparison_to_json(const RunComparison& cmp, int indent = 2);
std::string comparison_to_text(const RunComparison& cmp);

}  // namespace ancsim
