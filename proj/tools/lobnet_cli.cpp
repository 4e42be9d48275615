// Command-line front end: run scenarios, recompute statistics from persisted
// logs, compare scenario outputs, export networks.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lobnet/config.hpp"
#include "lobnet/csv_io.hpp"
#include "lobnet/network.hpp"
#include "lobnet/random.hpp"
#include "lobnet/scenario.hpp"

namespace fs = std::filesystem;
using namespace lobnet;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

void print_summary(const ScenarioResult& r) {
  for (const auto& row : r.summary) std::cout << row.scenario << ',' << row.metric << ',' << csv::format_double(row.value) << '\n';
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out,
            const std::optional<std::size_t>& realizations, const std::optional<std::uint64_t>& seed,
            const std::optional<std::size_t>& jobs) {
  RunConfig cfg = load_config(config_path);
  if (out) cfg.output_dir = *out;
  if (realizations) cfg.realizations = *realizations;
  if (seed) cfg.sim.seed = *seed;
  if (jobs) cfg.jobs = *jobs;
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioResult res = run_scenario(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "scenario '" << res.name << "': " << res.realizations.size() << " realizations in " << secs
            << " s, outputs in " << (cfg.output_dir / cfg.name).string() << '\n';
  print_summary(res);
  return 0;
}

struct StatsArgs {
  std::vector<std::string> logs;
  std::optional<std::string> config;
  std::optional<double> delta, burn_in, horizon, p_ref, tick_size;
  std::optional<std::size_t> max_lag, sign_max_lag;
  std::optional<std::string> out;
  std::string name{"stats"};
};

int cmd_stats(const StatsArgs& a) {
  RunConfig cfg = a.config ? load_config(*a.config) : parse_config("");
  cfg.name = a.name;
  if (a.delta) cfg.stats.delta = *a.delta;
  if (a.burn_in) cfg.sim.burn_in = *a.burn_in;
  if (a.horizon) cfg.sim.horizon = *a.horizon;
  if (a.p_ref) cfg.sim.p_ref = *a.p_ref;
  if (a.tick_size) cfg.sim.tick_size = *a.tick_size;
  if (a.max_lag) cfg.stats.return_max_lag = *a.max_lag;
  if (a.sign_max_lag) cfg.stats.sign_max_lag = *a.sign_max_lag;
  cfg.realizations = a.logs.size();
  cfg.validate();

  std::vector<RealizationStats> parts;
  for (const auto& path : a.logs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    const auto records = csv::read_events(in, cfg.sim.tick_size);
    parts.push_back(compute_realization_stats(records, cfg.sim, cfg.stats));
  }
  ScenarioResult res = aggregate(cfg, parts);
  if (a.out) write_scenario_outputs(res, *a.out);
  print_summary(res);
  return 0;
}

int cmd_compare(const std::vector<std::string>& dirs, const std::optional<std::string>& out) {
  std::vector<ScenarioResult> results;
  for (const auto& d : dirs) results.push_back(load_scenario_result(d));
  const Comparison cmp = compare_scenarios(results);
  if (out) write_comparison(cmp, *out);
  std::cout << "scenario";
  for (const auto& m : cmp.summary_metrics) std::cout << ',' << m;
  std::cout << '\n';
  for (const auto& [name, values] : cmp.summary) {
    std::cout << name;
    for (const double v : values) std::cout << ',' << csv::format_double(v);
    std::cout << '\n';
  }
  return 0;
}

int cmd_network(const std::string& kind, std::size_t n, std::uint64_t seed, const NetworkSpec& base,
                bool edges_given, const std::string& path) {
  NetworkSpec spec = base;
  spec.kind = parse_network_kind(kind);
  if (spec.kind == NetworkKind::None) throw std::invalid_argument("network kind 'none' has no edges to export");
  if (!edges_given) spec.er_edges = 4 * n;
  // Same stream as realization seed `seed` in a run.
  Rng rng(derive_seed(seed, stream::network));
  const auto g = build_network(spec, n, rng);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_edge_list(*g, out);
  std::cerr << "wrote " << g->edge_count() << " edges over " << g->node_count() << " nodes to " << path << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-intelligence limit order book market with network-driven order cascades"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> run_out;
  std::optional<std::size_t> run_realizations, run_jobs;
  std::optional<std::uint64_t> run_seed;
  auto* run = app.add_subcommand("run", "Run every realization of a scenario");
  run->add_option("--config", config_path, "Scenario config file")->required();
  run->add_option("--out", run_out, "Output directory (overrides output_dir)");
  run->add_option("--realizations", run_realizations, "Realization count");
  run->add_option("--seed", run_seed, "Base seed");
  run->add_option("--jobs", run_jobs, "Realizations run in parallel");

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "Recompute statistics from persisted events.csv logs");
  stats->add_option("--log", sa.logs, "events.csv of one realization (repeatable)")->required();
  stats->add_option("--config", sa.config, "Config supplying simulation and statistics settings");
  stats->add_option("--delta", sa.delta, "Mid-price sampling interval");
  stats->add_option("--burn-in", sa.burn_in, "Discarded initial interval");
  stats->add_option("--horizon", sa.horizon, "Run horizon");
  stats->add_option("--p-ref", sa.p_ref, "Reference price");
  stats->add_option("--tick-size", sa.tick_size, "Tick size");
  stats->add_option("--max-lag", sa.max_lag, "Max lag for return-based acf");
  stats->add_option("--sign-max-lag", sa.sign_max_lag, "Max lag for the trade-sign acf");
  stats->add_option("--name", sa.name, "Scenario label for outputs");
  stats->add_option("--out", sa.out, "Write aggregate CSVs here");

  std::vector<std::string> cmp_dirs;
  std::optional<std::string> cmp_out;
  auto* compare = app.add_subcommand("compare", "Align scenario outputs for overlay plotting");
  compare->add_option("dirs", cmp_dirs, "Scenario result directories")->required()->expected(2, -1);
  compare->add_option("--out", cmp_out, "Write comparison.csv, comparison_summary.csv and plot.gp here");

  std::string net_kind, net_path;
  std::size_t net_n = 1000;
  std::uint64_t net_seed = 1;
  NetworkSpec net_spec;
  auto* network = app.add_subcommand("network", "Build a network and export its edge list");
  network->add_option("--kind", net_kind, "lattice | er | ba")->required();
  network->add_option("--export", net_path, "Edge-list output path")->required();
  network->add_option("--n", net_n, "Node count");
  network->add_option("--seed", net_seed, "Seed");
  network->add_option("--rows", net_spec.lattice_rows, "Lattice rows");
  network->add_option("--cols", net_spec.lattice_cols, "Lattice columns");
  auto* edges_opt = network->add_option("--edges", net_spec.er_edges, "Erdos-Renyi edge count");
  network->add_option("--attach", net_spec.ba_attach, "Barabasi-Albert edges per new node");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsageError;
  }

  try {
    if (*run) return cmd_run(config_path, run_out, run_realizations, run_seed, run_jobs);
    if (*stats) return cmd_stats(sa);
    if (*compare) return cmd_compare(cmp_dirs, cmp_out);
    if (*network) return cmd_network(net_kind, net_n, net_seed, net_spec, edges_opt->count() > 0, net_path);
  } catch (const ConfigParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
