#include "lobnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "lobnet/kernel.hpp"
#include "lobnet/network.hpp"
#include "lobnet/random.hpp"

namespace lobnet {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_edges(const StatsOptions& o) {
  std::vector<double> edges;
  for (int i = o.waiting_min_decade * o.waiting_bins_per_decade; i <= o.waiting_max_decade * o.waiting_bins_per_decade; ++i)
    edges.push_back(std::pow(10.0, static_cast<double>(i) / o.waiting_bins_per_decade));
  return edges;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  return out;
}

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read '" + p.string() + "'");
  return in;
}

double mean_over(const AcfResult& acf, std::size_t lo, std::size_t hi) {
  hi = std::min(hi, acf.max_lag());
  if (hi < lo) return kNaN;
  double s = 0.0;
  for (std::size_t k = lo; k <= hi; ++k) s += acf.values[k];
  return s / static_cast<double>(hi - lo + 1);
}

std::optional<TailFit> try_fit(const AcfResult& acf, std::size_t lo, std::size_t hi) {
  try {
    return loglog_linear_fit(acf, lo, hi);
  } catch (const StatsError&) {
    return std::nullopt;
  }
}

void realization_dir_outputs(const fs::path& dir, const EventLog& log, const Graph* graph, double tick) {
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "events.csv");
    csv::write_events(out, log.records, tick);
  }
  {
    auto out = open_out(dir / "trades.csv");
    csv::write_trades(out, log.trades, tick);
  }
  if (graph) {
    auto out = open_out(dir / "edges.csv");
    write_edge_list(*graph, out);
  }
}

} // namespace

RealizationStats compute_realization_stats(std::span<const EventLogRecord> log, const SimConfig& sim,
                                           const StatsOptions& o) {
  RealizationStats s;
  const SampledSeries prices = sample_midprice(log, o.delta, sim.burn_in, sim.horizon, sim.p_ref);
  const SampledSeries returns = log_returns(prices);
  s.abs_return_acf = abs_return_acf(returns, o.return_max_lag);
  s.return_acf = autocorrelation(returns.values, o.return_max_lag);
  s.sign_acf = trade_sign_acf(log, o.sign_max_lag, sim.burn_in);
  s.waiting_times = inter_event_times(log, sim.burn_in);
  // Plain histogram on a log grid: a zero gap would land in underflow rather than abort.
  s.waiting_hist = histogram(s.waiting_times, log_edges(o));
  s.waiting_hist.log_bins = true;
  s.return_hist = histogram(returns.values, linear_edges(-o.return_hist_max, o.return_hist_max, o.return_hist_bins));
  s.returns = returns.values;

  std::map<std::uint64_t, std::uint64_t> per_cascade;
  for (const auto& r : log) {
    if (!r.cascade) continue;
    if (r.cascade->depth == 0) {
      if (r.time >= sim.burn_in) per_cascade[r.cascade->id] = 1;
    } else if (const auto it = per_cascade.find(r.cascade->id); it != per_cascade.end()) {
      ++it->second;
    }
  }
  for (const auto& [id, size] : per_cascade) ++s.cascade_sizes[size];
  return s;
}

const AcfResult& ScenarioResult::mean_curve(const csv::AcfTable& table) const {
  for (const auto& [label, acf] : table)
    if (label == "mean") return acf;
  throw Error("acf table has no mean curve");
}

double ScenarioResult::metric(const std::string& m) const {
  for (const auto& row : summary)
    if (row.metric == m) return row.value;
  return kNaN;
}

ScenarioResult aggregate(const RunConfig& config, std::span<const RealizationStats> parts) {
  if (parts.empty()) throw StatsError(StatsErrc::EmptyInput, "no realizations to aggregate");
  ScenarioResult res;
  res.name = config.name;
  res.config = config;

  std::vector<AcfResult> abs_curves, ret_curves, sign_curves;
  std::vector<Histogram> ret_hists, wait_hists;
  std::vector<double> pooled_returns, pooled_waits;
  std::map<std::uint64_t, std::uint64_t> sizes;
  for (std::size_t r = 0; r < parts.size(); ++r) {
    const auto& p = parts[r];
    const std::string label = std::to_string(r);
    res.abs_return_acf.emplace_back(label, p.abs_return_acf);
    res.return_acf.emplace_back(label, p.return_acf);
    res.sign_acf.emplace_back(label, p.sign_acf);
    abs_curves.push_back(p.abs_return_acf);
    ret_curves.push_back(p.return_acf);
    sign_curves.push_back(p.sign_acf);
    ret_hists.push_back(p.return_hist);
    wait_hists.push_back(p.waiting_hist);
    pooled_returns.insert(pooled_returns.end(), p.returns.begin(), p.returns.end());
    pooled_waits.insert(pooled_waits.end(), p.waiting_times.begin(), p.waiting_times.end());
    for (const auto& [size, count] : p.cascade_sizes) sizes[size] += count;
  }
  const AcfResult abs_mean = average_acf(abs_curves);
  const AcfResult sign_mean = average_acf(sign_curves);
  res.abs_return_acf.emplace_back("mean", abs_mean);
  res.return_acf.emplace_back("mean", average_acf(ret_curves));
  res.sign_acf.emplace_back("mean", sign_mean);
  res.return_hist = pool_histograms(ret_hists);
  res.waiting_hist = pool_histograms(wait_hists);

  const std::uint64_t max_size = sizes.empty() ? 1 : sizes.rbegin()->first;
  res.cascade_size_hist.edges.resize(max_size + 1);
  res.cascade_size_hist.counts.assign(max_size, 0);
  for (std::uint64_t s = 0; s <= max_size; ++s) res.cascade_size_hist.edges[s] = static_cast<double>(s + 1);
  double size_sum = 0.0;
  std::uint64_t cascades = 0;
  for (const auto& [size, count] : sizes) {
    res.cascade_size_hist.counts[size - 1] = count;
    size_sum += static_cast<double>(size * count);
    cascades += count;
  }

  const GaussianFit g = gaussian_moment_fit(pooled_returns);
  double wait_mean = 0.0;
  for (const double w : pooled_waits) wait_mean += w;
  wait_mean /= static_cast<double>(pooled_waits.size());
  const double surv = survival_at(pooled_waits, 10.0 * wait_mean);
  const auto sign_fit = try_fit(sign_mean, config.stats.sign_fit_min, config.stats.sign_fit_max);
  const auto abs_fit = try_fit(abs_mean, config.stats.abs_fit_min, config.stats.abs_fit_max);

  const auto add = [&res](const std::string& metric, double v) { res.summary.push_back({res.name, metric, v}); };
  add("realizations", static_cast<double>(parts.size()));
  add("return_mean", g.mean);
  add("return_std", g.stddev);
  add("return_excess_kurtosis", excess_kurtosis(pooled_returns));
  add("waiting_mean", wait_mean);
  add("waiting_survival_10x_mean", surv);
  add("waiting_tail_ratio", surv / std::exp(-10.0));
  add("sign_acf_mean_1_50", mean_over(sign_mean, 1, 50));
  add("sign_fit_slope", sign_fit ? sign_fit->slope : kNaN);
  add("sign_fit_intercept", sign_fit ? sign_fit->intercept : kNaN);
  add("abs_acf_lag1", abs_mean.values.size() > 1 ? abs_mean.values[1] : kNaN);
  add("abs_acf_mean_1_50", mean_over(abs_mean, 1, 50));
  add("abs_fit_slope", abs_fit ? abs_fit->slope : kNaN);
  add("cascade_count", static_cast<double>(cascades));
  add("cascade_size_mean", cascades ? size_sum / static_cast<double>(cascades) : kNaN);
  add("cascade_size_max", static_cast<double>(sizes.empty() ? 0 : max_size));
  return res;
}

ScenarioResult run_scenario(const RunConfig& config) {
  config.validate();
  const fs::path dir = config.output_dir / config.name;
  fs::create_directories(dir);

  const auto k = static_cast<std::int64_t>(config.realizations);
  std::vector<RealizationStats> parts(config.realizations);
  std::vector<RealizationInfo> infos(config.realizations);
  std::vector<fs::path> logs(config.realizations);
  std::string failure;

#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(config.jobs))
  for (std::int64_t r = 0; r < k; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    SimConfig sim = config.sim;
    sim.seed = config.seed_for(idx);
    try {
      Rng net_rng(derive_seed(sim.seed, stream::network));
      const std::optional<Graph> graph = build_network(sim.network, sim.n_agents, net_rng);
      const Graph* g = graph ? &*graph : nullptr;
      const EventLog log = run(sim, g);
      if (config.write_logs) {
        const fs::path rdir = dir / ("realization_" + std::to_string(idx));
        realization_dir_outputs(rdir, log, g, sim.tick_size);
        logs[idx] = rdir / "events.csv";
      }
      infos[idx] = RealizationInfo{sim.seed, log.events_processed, log.records.size(), log.trades.size(),
                                   log.follow_ups, g ? g->edge_count() : 0};
      parts[idx] = compute_realization_stats(log.records, sim, config.stats);
    } catch (const std::exception& e) {
#pragma omp critical(lobnet_scenario_failure)
      if (failure.empty())
        failure = "scenario '" + config.name + "' realization " + std::to_string(idx) + " (seed " +
                  std::to_string(sim.seed) + ") failed: " + e.what();
    }
  }
  if (!failure.empty()) throw Error(failure);

  ScenarioResult res = aggregate(config, parts);
  res.realizations = std::move(infos);
  res.event_logs = std::move(logs);
  write_scenario_outputs(res, dir);
  return res;
}

void write_scenario_outputs(const ScenarioResult& res, const fs::path& dir) {
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "config.cfg");
    out << to_config_text(res.config);
  }
  {
    nlohmann::json meta;
    meta["name"] = res.name;
    meta["version"] = kVersion;
    meta["config"] = to_config_text(res.config);
    meta["realizations"] = nlohmann::json::array();
    for (const auto& info : res.realizations)
      meta["realizations"].push_back({{"seed", info.seed},
                                      {"events_processed", info.events_processed},
                                      {"records", info.records},
                                      {"trades", info.trades},
                                      {"follow_ups", info.follow_ups},
                                      {"network_edges", info.network_edges}});
    auto out = open_out(dir / "metadata.json");
    out << meta.dump(2) << '\n';
  }
  const auto put_acf = [&dir](const char* file, const csv::AcfTable& t) {
    auto out = open_out(dir / file);
    csv::write_acf(out, t);
  };
  put_acf("acf_abs_returns.csv", res.abs_return_acf);
  put_acf("acf_returns.csv", res.return_acf);
  put_acf("acf_signs.csv", res.sign_acf);
  const auto put_hist = [&dir](const char* file, const Histogram& h) {
    auto out = open_out(dir / file);
    csv::write_histogram(out, h);
  };
  put_hist("hist_returns.csv", res.return_hist);
  put_hist("hist_waiting.csv", res.waiting_hist);
  put_hist("hist_cascade_sizes.csv", res.cascade_size_hist);
  auto out = open_out(dir / "summary.csv");
  csv::write_summary(out, res.summary);
}

ScenarioResult load_scenario_result(const fs::path& dir) {
  ScenarioResult res;
  {
    auto in = open_in(dir / "config.cfg");
    std::ostringstream buf;
    buf << in.rdbuf();
    res.config = parse_config(buf.str());
  }
  res.name = res.config.name;
  {
    auto in = open_in(dir / "metadata.json");
    const nlohmann::json meta = nlohmann::json::parse(in);
    for (const auto& r : meta.at("realizations"))
      res.realizations.push_back(RealizationInfo{r.at("seed"), r.at("events_processed"), r.at("records"),
                                                 r.at("trades"), r.at("follow_ups"), r.at("network_edges")});
  }
  const auto get_acf = [&dir](const char* file) {
    auto in = open_in(dir / file);
    return csv::read_acf(in);
  };
  res.abs_return_acf = get_acf("acf_abs_returns.csv");
  res.return_acf = get_acf("acf_returns.csv");
  res.sign_acf = get_acf("acf_signs.csv");
  const auto get_hist = [&dir](const char* file) {
    auto in = open_in(dir / file);
    return csv::read_histogram(in);
  };
  res.return_hist = get_hist("hist_returns.csv");
  res.waiting_hist = get_hist("hist_waiting.csv");
  res.waiting_hist.log_bins = true;
  res.cascade_size_hist = get_hist("hist_cascade_sizes.csv");
  auto in = open_in(dir / "summary.csv");
  res.summary = csv::read_summary(in);
  for (std::size_t r = 0; r < res.realizations.size(); ++r) {
    const fs::path log = dir / ("realization_" + std::to_string(r)) / "events.csv";
    res.event_logs.push_back(fs::exists(log) ? log : fs::path{});
  }
  return res;
}

Comparison compare_scenarios(std::span<const ScenarioResult> results) {
  if (results.size() < 2) throw StatsError(StatsErrc::EmptyInput, "compare needs at least two scenario results");
  const ScenarioResult& ref = results.front();
  for (const auto& r : results) {
    if (r.mean_curve(r.abs_return_acf).values.size() != ref.mean_curve(ref.abs_return_acf).values.size() ||
        r.mean_curve(r.return_acf).values.size() != ref.mean_curve(ref.return_acf).values.size() ||
        r.mean_curve(r.sign_acf).values.size() != ref.mean_curve(ref.sign_acf).values.size())
      throw StatsError(StatsErrc::IncompatibleStats, "scenario '" + r.name + "' uses a different lag range");
    if (r.return_hist.edges != ref.return_hist.edges || r.waiting_hist.edges != ref.waiting_hist.edges)
      throw StatsError(StatsErrc::IncompatibleStats, "scenario '" + r.name + "' uses a different histogram grid");
  }

  Comparison cmp;
  const auto curve_rows = [&](const char* diag, auto pick) {
    const AcfResult& base = ref.mean_curve(pick(ref));
    for (const auto& r : results) {
      const AcfResult& c = r.mean_curve(pick(r));
      for (std::size_t k = 0; k < c.values.size(); ++k)
        cmp.rows.push_back({r.name, diag, static_cast<double>(k), c.values[k], c.values[k] - base.values[k]});
    }
  };
  curve_rows("abs_return_acf", [](const ScenarioResult& r) -> const csv::AcfTable& { return r.abs_return_acf; });
  curve_rows("return_acf", [](const ScenarioResult& r) -> const csv::AcfTable& { return r.return_acf; });
  curve_rows("sign_acf", [](const ScenarioResult& r) -> const csv::AcfTable& { return r.sign_acf; });
  const auto hist_rows = [&](const char* diag, auto pick) {
    const Histogram& base = pick(ref);
    for (const auto& r : results) {
      const Histogram& h = pick(r);
      for (std::size_t b = 0; b < h.counts.size(); ++b)
        cmp.rows.push_back({r.name, diag, h.edges[b], h.density(b), h.density(b) - base.density(b)});
    }
  };
  hist_rows("return_density", [](const ScenarioResult& r) -> const Histogram& { return r.return_hist; });
  hist_rows("waiting_density", [](const ScenarioResult& r) -> const Histogram& { return r.waiting_hist; });

  cmp.summary_metrics = {"return_excess_kurtosis", "sign_acf_mean_1_50", "waiting_tail_ratio", "sign_fit_slope",
                         "abs_fit_slope"};
  for (const auto& r : results) {
    std::vector<double> row;
    for (const auto& m : cmp.summary_metrics) row.push_back(r.metric(m));
    cmp.summary.emplace_back(r.name, std::move(row));
  }
  return cmp;
}

void write_comparison(const Comparison& cmp, const fs::path& dir) {
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "comparison.csv");
    out << "scenario,diagnostic,x,value,delta_vs_reference\n";
    for (const auto& r : cmp.rows)
      out << r.scenario << ',' << r.diagnostic << ',' << csv::format_double(r.x) << ',' << csv::format_double(r.value)
          << ',' << csv::format_double(r.delta_vs_reference) << '\n';
  }
  {
    auto out = open_out(dir / "comparison_summary.csv");
    out << "scenario";
    for (const auto& m : cmp.summary_metrics) out << ',' << m;
    out << '\n';
    for (const auto& [name, values] : cmp.summary) {
      out << name;
      for (const double v : values) out << ',' << csv::format_double(v);
      out << '\n';
    }
  }
  // gnuplot overlay of every diagnostic, one curve per scenario.
  auto out = open_out(dir / "plot.gp");
  out << "set datafile separator ','\nset terminal pngcairo size 1200,1500\nset output 'comparison.png'\n"
      << "set multiplot layout 3,2\n";
  const auto panel = [&](const char* diag, const char* opts) {
    out << opts << "\nplot ";
    for (std::size_t i = 0; i < cmp.summary.size(); ++i) {
      const std::string& name = cmp.summary[i].first;
      out << (i ? ", " : "") << "'comparison.csv' using (strcol(1) eq '" << name << "' && strcol(2) eq '" << diag
          << "' ? $3 : 1/0):4 with lines title '" << name << "'";
    }
    out << "\nunset logscale\n";
  };
  panel("return_density", "set title 'returns'\nset logscale y");
  panel("waiting_density", "set title 'waiting times'\nset logscale xy");
  panel("sign_acf", "set title 'trade sign acf'");
  panel("sign_acf", "set title 'trade sign acf (log-log)'\nset logscale xy");
  panel("abs_return_acf", "set title '|r| acf'");
  panel("abs_return_acf", "set title '|r| acf (log y)'\nset logscale y");
  out << "unset multiplot\n";
}

} // namespace lobnet
