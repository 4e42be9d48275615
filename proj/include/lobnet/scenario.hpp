#pragma once
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lobnet/config.hpp"
#include "lobnet/csv_io.hpp"
#include "lobnet/event_log.hpp"
#include "lobnet/stats.hpp"

namespace lobnet {

/// Everything the four diagnostics need from one realization after burn-in.
struct RealizationStats {
  std::vector<double> returns;
  std::vector<double> waiting_times;
  AcfResult abs_return_acf;
  AcfResult return_acf;
  AcfResult sign_acf;
  Histogram return_hist;
  Histogram waiting_hist;
  std::map<std::uint64_t, std::uint64_t> cascade_sizes;  // size -> number of cascades
};

RealizationStats compute_realization_stats(std::span<const EventLogRecord> log, const SimConfig& sim,
                                           const StatsOptions& options);

struct RealizationInfo {
  std::uint64_t seed{0};
  std::uint64_t events_processed{0};
  std::uint64_t records{0};
  std::uint64_t trades{0};
  std::uint64_t follow_ups{0};
  std::size_t network_edges{0};
};

struct ScenarioResult {
  std::string name;
  RunConfig config;
  std::vector<RealizationInfo> realizations;
  std::vector<std::filesystem::path> event_logs;
  // Per-realization curves labelled "0".."K-1", then the per-lag average labelled "mean".
  csv::AcfTable abs_return_acf;
  csv::AcfTable return_acf;
  csv::AcfTable sign_acf;
  // Pooled (summed) over realizations.
  Histogram return_hist;
  Histogram waiting_hist;
  Histogram cascade_size_hist;
  std::vector<csv::SummaryRow> summary;

  const AcfResult& mean_curve(const csv::AcfTable& table) const;
  double metric(const std::string& name) const;  // NaN when absent
};

/// Aggregates per-realization statistics: histograms are pooled, acfs averaged,
/// moment and tail metrics computed on the pooled samples.
ScenarioResult aggregate(const RunConfig& config, std::span<const RealizationStats> parts);

/// Builds a fresh network and runs the kernel for every realization, persists
/// logs when configured, and writes all aggregate outputs to output_dir/name.
ScenarioResult run_scenario(const RunConfig& config);

void write_scenario_outputs(const ScenarioResult& result, const std::filesystem::path& dir);
/// Reads the aggregate CSVs written by write_scenario_outputs.
ScenarioResult load_scenario_result(const std::filesystem::path& dir);

struct ComparisonRow {
  std::string scenario;
  std::string diagnostic;
  double x{0.0};
  double value{0.0};
  double delta_vs_reference{0.0};  // value minus the first scenario's value at the same x
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  std::vector<std::string> summary_metrics;
  std::vector<std::pair<std::string, std::vector<double>>> summary;  // one row per scenario
};

/// Throws StatsError(IncompatibleStats) when lag ranges or histogram grids differ.
Comparison compare_scenarios(std::span<const ScenarioResult> results);
void write_comparison(const Comparison& cmp, const std::filesystem::path& dir);

} // namespace lobnet
