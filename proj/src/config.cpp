#include "lobnet/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "lobnet/csv_io.hpp"

namespace lobnet {

void StatsOptions::validate() const {
  if (!(delta > 0.0)) throw ConfigValidationError("delta must be positive");
  if (return_max_lag < 1 || sign_max_lag < 1) throw ConfigValidationError("max lags must be >= 1");
  if (!(return_hist_max > 0.0) || return_hist_bins < 1) throw ConfigValidationError("invalid return histogram grid");
  if (waiting_bins_per_decade < 1 || waiting_max_decade <= waiting_min_decade)
    throw ConfigValidationError("invalid waiting-time histogram grid");
  if (sign_fit_min < 1 || sign_fit_max <= sign_fit_min || sign_fit_max > sign_max_lag)
    throw ConfigValidationError("sign fit range must satisfy 1 <= min < max <= sign_max_lag");
  if (abs_fit_min < 1 || abs_fit_max <= abs_fit_min || abs_fit_max > return_max_lag)
    throw ConfigValidationError("abs fit range must satisfy 1 <= min < max <= return_max_lag");
}

void RunConfig::validate() const {
  try {
    sim.validate();
  } catch (const ConfigValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigValidationError(e.what());
  }
  if (!(sim.burn_in < sim.horizon)) throw ConfigValidationError("burn_in must be smaller than horizon");
  stats.validate();
  if (realizations < 1) throw ConfigValidationError("realizations must be >= 1");
  if (jobs < 1) throw ConfigValidationError("jobs must be >= 1");
  if (name.empty() || name.find_first_of(",/\\ \t") != std::string::npos)
    throw ConfigValidationError("name must be non-empty without separators or whitespace");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T to_int(std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) throw std::invalid_argument("expected an integer");
  return out;
}

double to_real(std::string_view v) { return csv::parse_double(v); }

bool to_bool(std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("expected true or false");
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"name", [](RunConfig& c, std::string_view v) { c.name = std::string(v); }},
      {"network", [](RunConfig& c, std::string_view v) { c.sim.network.kind = parse_network_kind(v); }},
      {"n_agents", [](RunConfig& c, std::string_view v) { c.sim.n_agents = to_int<std::size_t>(v); }},
      {"lattice_rows", [](RunConfig& c, std::string_view v) { c.sim.network.lattice_rows = to_int<std::size_t>(v); }},
      {"lattice_cols", [](RunConfig& c, std::string_view v) { c.sim.network.lattice_cols = to_int<std::size_t>(v); }},
      {"er_edges", [](RunConfig& c, std::string_view v) { c.sim.network.er_edges = to_int<std::size_t>(v); }},
      {"ba_attach", [](RunConfig& c, std::string_view v) { c.sim.network.ba_attach = to_int<std::size_t>(v); }},
      {"q", [](RunConfig& c, std::string_view v) { c.sim.q = to_real(v); }},
      {"lambda_m", [](RunConfig& c, std::string_view v) { c.sim.agent.lambda_m = to_real(v); }},
      {"lambda_l", [](RunConfig& c, std::string_view v) { c.sim.agent.lambda_l = to_real(v); }},
      {"lambda_c", [](RunConfig& c, std::string_view v) { c.sim.agent.lambda_c = to_real(v); }},
      {"lambda_f", [](RunConfig& c, std::string_view v) { c.sim.agent.lambda_f = to_real(v); }},
      {"m_s", [](RunConfig& c, std::string_view v) { c.sim.agent.m_s = to_real(v); }},
      {"d_s", [](RunConfig& c, std::string_view v) { c.sim.agent.d_s = to_real(v); }},
      {"d_p", [](RunConfig& c, std::string_view v) { c.sim.agent.d_p = to_real(v); }},
      {"tick_size", [](RunConfig& c, std::string_view v) { c.sim.tick_size = to_real(v); }},
      {"p_ref", [](RunConfig& c, std::string_view v) { c.sim.p_ref = to_real(v); }},
      {"horizon", [](RunConfig& c, std::string_view v) { c.sim.horizon = to_real(v); }},
      {"burn_in", [](RunConfig& c, std::string_view v) { c.sim.burn_in = to_real(v); }},
      {"seed", [](RunConfig& c, std::string_view v) { c.sim.seed = to_int<std::uint64_t>(v); }},
      {"max_events",
       [](RunConfig& c, std::string_view v) {
         if (v == "off")
           c.sim.max_events.reset();
         else
           c.sim.max_events = to_int<std::uint64_t>(v);
       }},
      {"realizations", [](RunConfig& c, std::string_view v) { c.realizations = to_int<std::size_t>(v); }},
      {"delta", [](RunConfig& c, std::string_view v) { c.stats.delta = to_real(v); }},
      {"return_max_lag", [](RunConfig& c, std::string_view v) { c.stats.return_max_lag = to_int<std::size_t>(v); }},
      {"sign_max_lag", [](RunConfig& c, std::string_view v) { c.stats.sign_max_lag = to_int<std::size_t>(v); }},
      {"return_hist_max", [](RunConfig& c, std::string_view v) { c.stats.return_hist_max = to_real(v); }},
      {"return_hist_bins", [](RunConfig& c, std::string_view v) { c.stats.return_hist_bins = to_int<std::size_t>(v); }},
      {"waiting_bins_per_decade",
       [](RunConfig& c, std::string_view v) { c.stats.waiting_bins_per_decade = to_int<int>(v); }},
      {"waiting_min_decade", [](RunConfig& c, std::string_view v) { c.stats.waiting_min_decade = to_int<int>(v); }},
      {"waiting_max_decade", [](RunConfig& c, std::string_view v) { c.stats.waiting_max_decade = to_int<int>(v); }},
      {"sign_fit_min", [](RunConfig& c, std::string_view v) { c.stats.sign_fit_min = to_int<std::size_t>(v); }},
      {"sign_fit_max", [](RunConfig& c, std::string_view v) { c.stats.sign_fit_max = to_int<std::size_t>(v); }},
      {"abs_fit_min", [](RunConfig& c, std::string_view v) { c.stats.abs_fit_min = to_int<std::size_t>(v); }},
      {"abs_fit_max", [](RunConfig& c, std::string_view v) { c.stats.abs_fit_max = to_int<std::size_t>(v); }},
      {"output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(v); }},
      {"jobs", [](RunConfig& c, std::string_view v) { c.jobs = to_int<std::size_t>(v); }},
      {"write_logs", [](RunConfig& c, std::string_view v) { c.write_logs = to_bool(v); }},
  };
  return table;
}

} // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::map<std::string, bool, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigParseError(where + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigParseError(where + ": unknown key '" + std::string(key) + "'");
    if (seen[std::string(key)]) throw ConfigParseError(where + ": duplicate key '" + std::string(key) + "'");
    seen[std::string(key)] = true;
    if (value.empty()) throw ConfigParseError(where + ": empty value for '" + std::string(key) + "'");
    try {
      it->second(config, value);
    } catch (const std::exception& e) {
      throw ConfigParseError(where + ", key '" + std::string(key) + "': " + e.what());
    }
  }
  // Average degree 8 unless given explicitly.
  if (!seen.contains("er_edges")) config.sim.network.er_edges = 4 * config.sim.n_agents;
  if (!seen.contains("name")) config.name = std::string(to_string(config.sim.network.kind));
  config.validate();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream o;
  const auto real = [](double v) { return csv::format_double(v); };
  o << "name = " << c.name << '\n'
    << "network = " << to_string(c.sim.network.kind) << '\n'
    << "n_agents = " << c.sim.n_agents << '\n'
    << "lattice_rows = " << c.sim.network.lattice_rows << '\n'
    << "lattice_cols = " << c.sim.network.lattice_cols << '\n'
    << "er_edges = " << c.sim.network.er_edges << '\n'
    << "ba_attach = " << c.sim.network.ba_attach << '\n'
    << "q = " << real(c.sim.q) << '\n'
    << "lambda_m = " << real(c.sim.agent.lambda_m) << '\n'
    << "lambda_l = " << real(c.sim.agent.lambda_l) << '\n'
    << "lambda_c = " << real(c.sim.agent.lambda_c) << '\n'
    << "lambda_f = " << real(c.sim.agent.lambda_f) << '\n'
    << "m_s = " << real(c.sim.agent.m_s) << '\n'
    << "d_s = " << real(c.sim.agent.d_s) << '\n'
    << "d_p = " << real(c.sim.agent.d_p) << '\n'
    << "tick_size = " << real(c.sim.tick_size) << '\n'
    << "p_ref = " << real(c.sim.p_ref) << '\n'
    << "horizon = " << real(c.sim.horizon) << '\n'
    << "burn_in = " << real(c.sim.burn_in) << '\n'
    << "seed = " << c.sim.seed << '\n'
    << "max_events = " << (c.sim.max_events ? std::to_string(*c.sim.max_events) : std::string("off")) << '\n'
    << "realizations = " << c.realizations << '\n'
    << "delta = " << real(c.stats.delta) << '\n'
    << "return_max_lag = " << c.stats.return_max_lag << '\n'
    << "sign_max_lag = " << c.stats.sign_max_lag << '\n'
    << "return_hist_max = " << real(c.stats.return_hist_max) << '\n'
    << "return_hist_bins = " << c.stats.return_hist_bins << '\n'
    << "waiting_bins_per_decade = " << c.stats.waiting_bins_per_decade << '\n'
    << "waiting_min_decade = " << c.stats.waiting_min_decade << '\n'
    << "waiting_max_decade = " << c.stats.waiting_max_decade << '\n'
    << "sign_fit_min = " << c.stats.sign_fit_min << '\n'
    << "sign_fit_max = " << c.stats.sign_fit_max << '\n'
    << "abs_fit_min = " << c.stats.abs_fit_min << '\n'
    << "abs_fit_max = " << c.stats.abs_fit_max << '\n'
    << "write_logs = " << (c.write_logs ? "true" : "false") << '\n';
  return o.str();
}

} // namespace lobnet
