#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lobnet/event_log.hpp"
#include "lobnet/order_book.hpp"
#include "lobnet/stats.hpp"

namespace lobnet::csv {

inline constexpr std::string_view kEventsHeader =
    "time,seq,agent,action,side,price,volume,trades,mid_after,cascade_id,cascade_depth";
inline constexpr std::string_view kTradesHeader = "time,price,volume,aggressor,maker_order,taker_agent";
inline constexpr std::string_view kAcfHeader = "lag,value,realization";
inline constexpr std::string_view kHistHeader = "bin_left,bin_right,count";
inline constexpr std::string_view kSummaryHeader = "scenario,metric,value";

class ParseError : public Error {
public:
  using Error::Error;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Decimal price with exactly the tick's precision, e.g. 9825 ticks at 0.01 -> "98.25".
std::string format_price(TickPrice p, double tick_size);
TickPrice parse_price(std::string_view text, double tick_size);

std::string_view side_name(Side s) noexcept;
Side parse_side(std::string_view text);

void write_events(std::ostream& out, std::span<const EventLogRecord> records, double tick_size);
std::vector<EventLogRecord> read_events(std::istream& in, double tick_size);

void write_trades(std::ostream& out, std::span<const Trade> trades, double tick_size);

/// Labelled curves; the label goes into the realization column.
using AcfTable = std::vector<std::pair<std::string, AcfResult>>;
void write_acf(std::ostream& out, const AcfTable& curves);
AcfTable read_acf(std::istream& in);

/// Underflow and overflow are written as rows with -inf / inf outer edges.
void write_histogram(std::ostream& out, const Histogram& h);
Histogram read_histogram(std::istream& in);

struct SummaryRow {
  std::string scenario;
  std::string metric;
  double value{0.0};
};
void write_summary(std::ostream& out, std::span<const SummaryRow> rows);
std::vector<SummaryRow> read_summary(std::istream& in);

std::vector<std::string_view> split(std::string_view line, char sep = ',');

} // namespace lobnet::csv
