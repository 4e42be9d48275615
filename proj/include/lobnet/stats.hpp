#pragma once
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lobnet/event_log.hpp"
#include "lobnet/types.hpp"

namespace lobnet {

enum class StatsErrc {
  EmptyInput,
  TooShort,
  NonPositivePrice,
  ConstantSeries,
  TooFewTrades,
  TooFewEvents,
  NonPositive,
  NonPositivePoint,
  IncompatibleStats,
};

class StatsError : public Error {
public:
  StatsError(StatsErrc code, const std::string& what) : Error(what), code_(code) {}
  StatsErrc code() const noexcept { return code_; }

private:
  StatsErrc code_;
};

/// Uniformly spaced samples starting at t0.
struct SampledSeries {
  double delta{1.0};
  double t0{0.0};
  std::vector<double> values;
};

/// values[k] is the estimate at lag k; values[0] == 1.
struct AcfResult {
  std::vector<double> values;
  std::size_t max_lag() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  bool operator==(const AcfResult&) const = default;
};

/// Half-open bins [edges[i], edges[i+1]); out-of-range values land in underflow/overflow.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow{0};
  std::uint64_t overflow{0};
  bool log_bins{false};

  std::uint64_t total() const noexcept;
  /// count / (total * width)
  double density(std::size_t bin) const;
  bool operator==(const Histogram&) const = default;
};

enum class FitCoords { LogLog, SemilogY };

struct TailFit {
  double slope{0.0};
  double intercept{0.0};
  FitCoords coords{FitCoords::LogLog};
  double x_min{0.0};
  double x_max{0.0};
  std::size_t points{0};
};

struct GaussianFit {
  double mean{0.0};
  double stddev{0.0};
};

/// Last-observation-carried-forward mid at burn_in, burn_in + delta, ..., <= horizon.
/// Before the first two-sided quote the fallback is p_ref.
SampledSeries sample_midprice(std::span<const EventLogRecord> log, double delta, double burn_in, double horizon,
                              double p_ref);

SampledSeries log_returns(const SampledSeries& prices);

/// Biased estimator: global mean, (n - k)-term numerator over the n-term
/// sum of squared deviations. Lags are evaluated in parallel; each lag's sum
/// is sequential, so the result is bit-identical to the serial version.
AcfResult autocorrelation(std::span<const double> values, std::size_t max_lag);
/// Single-threaded reference for the same estimator.
AcfResult autocorrelation_serial(std::span<const double> values, std::size_t max_lag);

AcfResult abs_return_acf(const SampledSeries& returns, std::size_t max_lag);

/// +1 for buyer-initiated, -1 for seller-initiated, one entry per trade, in trade order.
std::vector<double> trade_signs(std::span<const EventLogRecord> log, double burn_in);
AcfResult trade_sign_acf(std::span<const EventLogRecord> log, std::size_t max_lag, double burn_in);

/// Gaps between consecutive action records at or after burn_in.
std::vector<double> inter_event_times(std::span<const EventLogRecord> log, double burn_in);

Histogram histogram(std::span<const double> values, std::vector<double> edges);
Histogram log_binned_histogram(std::span<const double> values, int bins_per_decade);
/// Fixed grid from 10^min_decade to 10^max_decade, for pooling across samples.
Histogram log_binned_histogram(std::span<const double> values, int bins_per_decade, int min_decade, int max_decade);
std::vector<double> linear_edges(double lo, double hi, std::size_t bins);

GaussianFit gaussian_moment_fit(std::span<const double> values);
double excess_kurtosis(std::span<const double> values);

/// Fraction of values strictly greater than threshold.
double survival_at(std::span<const double> values, double threshold);

/// OLS of log y on log x over x in [x_min, x_max].
TailFit loglog_linear_fit(std::span<const double> x, std::span<const double> y, double x_min, double x_max);
/// OLS of log y on x over x in [x_min, x_max].
TailFit semilogy_linear_fit(std::span<const double> x, std::span<const double> y, double x_min, double x_max);
/// Fit over lags [lag_min, lag_max] of an acf curve.
TailFit loglog_linear_fit(const AcfResult& acf, std::size_t lag_min, std::size_t lag_max);

/// Per-lag arithmetic mean.
AcfResult average_acf(std::span<const AcfResult> curves);
/// Bin-wise sum; grids must agree.
Histogram pool_histograms(std::span<const Histogram> parts);

} // namespace lobnet
