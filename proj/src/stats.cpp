#include "lobnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lobnet {

namespace {

[[noreturn]] void fail(StatsErrc code, const std::string& what) { throw StatsError(code, what); }

std::vector<double> centered(std::span<const double> values, double& denom) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  std::vector<double> d(values.size());
  denom = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    d[i] = values[i] - mean;
    denom += d[i] * d[i];
  }
  if (denom == 0.0) fail(StatsErrc::ConstantSeries, "autocorrelation of a constant series is undefined");
  return d;
}

void check_acf_input(std::span<const double> values, std::size_t max_lag) {
  if (values.empty()) fail(StatsErrc::EmptyInput, "autocorrelation of an empty series");
  if (values.size() <= max_lag) fail(StatsErrc::TooShort, "series length must exceed max_lag");
}

double lag_sum(const std::vector<double>& d, std::size_t lag) {
  double s = 0.0;
  const std::size_t n = d.size() - lag;
  for (std::size_t t = 0; t < n; ++t) s += d[t + lag] * d[t];
  return s;
}

} // namespace

std::uint64_t Histogram::total() const noexcept {
  std::uint64_t n = underflow + overflow;
  for (const auto c : counts) n += c;
  return n;
}

double Histogram::density(std::size_t bin) const {
  const auto n = total();
  if (n == 0) return 0.0;
  return static_cast<double>(counts.at(bin)) / (static_cast<double>(n) * (edges[bin + 1] - edges[bin]));
}

SampledSeries sample_midprice(std::span<const EventLogRecord> log, double delta, double burn_in, double horizon,
                              double p_ref) {
  if (!(delta > 0.0)) throw std::invalid_argument("sampling interval must be positive");
  if (log.empty()) fail(StatsErrc::EmptyInput, "cannot sample mid-price from an empty log");
  const auto count = static_cast<std::size_t>(std::floor((horizon - burn_in) / delta + 1e-9)) + 1;

  SampledSeries out{delta, burn_in, {}};
  out.values.reserve(count);
  double mid = p_ref;
  std::size_t next = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = burn_in + static_cast<double>(i) * delta;
    while (next < log.size() && log[next].time <= t) {
      if (log[next].mid_after) mid = *log[next].mid_after;
      ++next;
    }
    out.values.push_back(mid);
  }
  return out;
}

SampledSeries log_returns(const SampledSeries& prices) {
  if (prices.values.size() < 2) fail(StatsErrc::TooShort, "log returns need at least two prices");
  SampledSeries out{prices.delta, prices.t0 + prices.delta, {}};
  out.values.reserve(prices.values.size() - 1);
  for (std::size_t i = 0; i < prices.values.size(); ++i) {
    if (!(prices.values[i] > 0.0)) fail(StatsErrc::NonPositivePrice, "log returns need strictly positive prices");
    if (i > 0) out.values.push_back(std::log(prices.values[i]) - std::log(prices.values[i - 1]));
  }
  return out;
}

AcfResult autocorrelation_serial(std::span<const double> values, std::size_t max_lag) {
  check_acf_input(values, max_lag);
  double denom = 0.0;
  const std::vector<double> d = centered(values, denom);
  AcfResult out;
  out.values.resize(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) out.values[k] = lag_sum(d, k) / denom;
  return out;
}

AcfResult autocorrelation(std::span<const double> values, std::size_t max_lag) {
  check_acf_input(values, max_lag);
  double denom = 0.0;
  const std::vector<double> d = centered(values, denom);
  AcfResult out;
  out.values.resize(max_lag + 1);
  const auto lags = static_cast<std::int64_t>(max_lag) + 1;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t k = 0; k < lags; ++k) {
    const auto lag = static_cast<std::size_t>(k);
    out.values[lag] = lag_sum(d, lag) / denom;
  }
  return out;
}

AcfResult abs_return_acf(const SampledSeries& returns, std::size_t max_lag) {
  std::vector<double> mag(returns.values.size());
  std::transform(returns.values.begin(), returns.values.end(), mag.begin(), [](double r) { return std::abs(r); });
  return autocorrelation(mag, max_lag);
}

std::vector<double> trade_signs(std::span<const EventLogRecord> log, double burn_in) {
  std::vector<double> signs;
  for (const auto& rec : log) {
    if (rec.time < burn_in || rec.trades == 0) continue;
    signs.insert(signs.end(), rec.trades, static_cast<double>(sign_of(*rec.side)));
  }
  return signs;
}

AcfResult trade_sign_acf(std::span<const EventLogRecord> log, std::size_t max_lag, double burn_in) {
  const std::vector<double> signs = trade_signs(log, burn_in);
  if (signs.size() < max_lag + 1) fail(StatsErrc::TooFewTrades, "not enough trades after burn-in for max_lag");
  return autocorrelation(signs, max_lag);
}

std::vector<double> inter_event_times(std::span<const EventLogRecord> log, double burn_in) {
  std::vector<double> gaps;
  const EventLogRecord* prev = nullptr;
  for (const auto& rec : log) {
    if (rec.time < burn_in) continue;
    if (prev) gaps.push_back(rec.time - prev->time);
    prev = &rec;
  }
  if (gaps.empty()) fail(StatsErrc::TooFewEvents, "need at least two events after burn-in");
  return gaps;
}

std::vector<double> linear_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("linear_edges needs hi > lo and bins > 0");
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  return edges;
}

Histogram histogram(std::span<const double> values, std::vector<double> edges) {
  if (values.empty()) fail(StatsErrc::EmptyInput, "histogram of an empty sample");
  if (edges.size() < 2) throw std::invalid_argument("histogram needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw std::invalid_argument("histogram edges must be strictly increasing");

  Histogram h;
  h.counts.assign(edges.size() - 1, 0);
  for (const double v : values) {
    if (v < edges.front()) {
      ++h.underflow;
    } else if (v >= edges.back()) {
      ++h.overflow;
    } else {
      const auto it = std::upper_bound(edges.begin(), edges.end(), v);
      ++h.counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
  }
  h.edges = std::move(edges);
  return h;
}

namespace {

std::vector<double> decade_edges(int bins_per_decade, int lo, int hi) {
  std::vector<double> edges;
  for (int i = lo; i <= hi; ++i) edges.push_back(std::pow(10.0, static_cast<double>(i) / bins_per_decade));
  return edges;
}

void require_positive(std::span<const double> values) {
  if (values.empty()) fail(StatsErrc::EmptyInput, "histogram of an empty sample");
  for (const double v : values)
    if (!(v > 0.0)) fail(StatsErrc::NonPositive, "log-binned histogram needs strictly positive values");
}

} // namespace

Histogram log_binned_histogram(std::span<const double> values, int bins_per_decade) {
  if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be >= 1");
  require_positive(values);
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  int lo = static_cast<int>(std::floor(std::log10(*mn) * bins_per_decade));
  int hi = static_cast<int>(std::floor(std::log10(*mx) * bins_per_decade)) + 1;
  while (std::pow(10.0, static_cast<double>(lo) / bins_per_decade) > *mn) --lo;
  while (std::pow(10.0, static_cast<double>(hi) / bins_per_decade) <= *mx) ++hi;
  Histogram h = histogram(values, decade_edges(bins_per_decade, lo, hi));
  h.log_bins = true;
  return h;
}

Histogram log_binned_histogram(std::span<const double> values, int bins_per_decade, int min_decade, int max_decade) {
  if (bins_per_decade < 1 || max_decade <= min_decade) throw std::invalid_argument("invalid log-bin grid");
  require_positive(values);
  Histogram h = histogram(values, decade_edges(bins_per_decade, min_decade * bins_per_decade, max_decade * bins_per_decade));
  h.log_bins = true;
  return h;
}

GaussianFit gaussian_moment_fit(std::span<const double> values) {
  if (values.size() < 4) fail(StatsErrc::TooShort, "moment fit needs at least four values");
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double m2 = 0.0;
  for (const double v : values) m2 += (v - mean) * (v - mean);
  return GaussianFit{mean, std::sqrt(m2 / static_cast<double>(values.size()))};
}

double excess_kurtosis(std::span<const double> values) {
  if (values.size() < 4) fail(StatsErrc::TooShort, "kurtosis needs at least four values");
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  const double mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (const double v : values) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  if (m2 == 0.0) fail(StatsErrc::ConstantSeries, "kurtosis of a constant sample is undefined");
  return m4 / (m2 * m2) - 3.0;
}

double survival_at(std::span<const double> values, double threshold) {
  if (values.empty()) fail(StatsErrc::EmptyInput, "survival of an empty sample");
  const auto above = std::count_if(values.begin(), values.end(), [threshold](double v) { return v > threshold; });
  return static_cast<double>(above) / static_cast<double>(values.size());
}

namespace {

TailFit ols(std::span<const double> x, std::span<const double> y, double x_min, double x_max, FitCoords coords) {
  if (x.size() != y.size()) throw std::invalid_argument("fit needs equally long x and y");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_min || x[i] > x_max) continue;
    if (!(y[i] > 0.0) || (coords == FitCoords::LogLog && !(x[i] > 0.0)))
      fail(StatsErrc::NonPositivePoint, "fit range contains a non-positive point");
    const double u = coords == FitCoords::LogLog ? std::log(x[i]) : x[i];
    const double v = std::log(y[i]);
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
    ++n;
  }
  if (n < 2) fail(StatsErrc::TooShort, "fit range holds fewer than two points");
  const double nn = static_cast<double>(n);
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  return TailFit{slope, (sy - slope * sx) / nn, coords, x_min, x_max, n};
}

} // namespace

TailFit loglog_linear_fit(std::span<const double> x, std::span<const double> y, double x_min, double x_max) {
  return ols(x, y, x_min, x_max, FitCoords::LogLog);
}

TailFit semilogy_linear_fit(std::span<const double> x, std::span<const double> y, double x_min, double x_max) {
  return ols(x, y, x_min, x_max, FitCoords::SemilogY);
}

TailFit loglog_linear_fit(const AcfResult& acf, std::size_t lag_min, std::size_t lag_max) {
  if (lag_max > acf.max_lag()) throw std::invalid_argument("fit range exceeds computed lags");
  std::vector<double> lags(acf.values.size());
  for (std::size_t k = 0; k < lags.size(); ++k) lags[k] = static_cast<double>(k);
  return loglog_linear_fit(lags, acf.values, static_cast<double>(lag_min), static_cast<double>(lag_max));
}

AcfResult average_acf(std::span<const AcfResult> curves) {
  if (curves.empty()) fail(StatsErrc::EmptyInput, "no acf curves to average");
  AcfResult out;
  out.values.assign(curves.front().values.size(), 0.0);
  for (const auto& c : curves) {
    if (c.values.size() != out.values.size()) fail(StatsErrc::IncompatibleStats, "acf curves differ in max lag");
    for (std::size_t k = 0; k < c.values.size(); ++k) out.values[k] += c.values[k];
  }
  for (auto& v : out.values) v /= static_cast<double>(curves.size());
  return out;
}

Histogram pool_histograms(std::span<const Histogram> parts) {
  if (parts.empty()) fail(StatsErrc::EmptyInput, "no histograms to pool");
  Histogram out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].edges != out.edges) fail(StatsErrc::IncompatibleStats, "histogram grids differ");
    for (std::size_t b = 0; b < out.counts.size(); ++b) out.counts[b] += parts[i].counts[b];
    out.underflow += parts[i].underflow;
    out.overflow += parts[i].overflow;
  }
  return out;
}

} // namespace lobnet
