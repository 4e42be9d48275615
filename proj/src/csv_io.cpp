#include "lobnet/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

namespace lobnet::csv {

namespace {

struct TickFormat {
  int decimals;
  std::int64_t units;  // tick size in units of 10^-decimals
  std::int64_t scale;  // 10^decimals
};

TickFormat tick_format(double tick_size) {
  std::int64_t scale = 1;
  for (int d = 0; d <= 12; ++d, scale *= 10) {
    const double scaled = tick_size * static_cast<double>(scale);
    const double rounded = std::round(scaled);
    if (rounded >= 1.0 && std::abs(scaled - rounded) < 1e-9 * rounded) return {d, static_cast<std::int64_t>(rounded), scale};
  }
  throw Error("tick size has no finite decimal representation");
}

template <typename T>
T parse_int(std::string_view text, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError(std::string("bad ") + what + " '" + std::string(text) + "'");
  return v;
}

void expect_header(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw ParseError("expected header '" + std::string(header) + "'");
}

void put(std::string& buf, std::string_view s) { buf.append(s); }

template <typename T>
void put_int(std::string& buf, T v) {
  char tmp[32];
  const auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
  buf.append(tmp, ptr);
}

} // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char tmp[64];
  const auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
  return std::string(tmp, ptr);
}

double parse_double(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("bad number '" + std::string(text) + "'");
  return v;
}

std::string format_price(TickPrice p, double tick_size) {
  const TickFormat f = tick_format(tick_size);
  const std::int64_t v = p.ticks * f.units;
  std::string out = std::to_string(v / f.scale);
  if (f.decimals > 0) {
    std::string frac = std::to_string(v % f.scale);
    out += '.';
    out.append(static_cast<std::size_t>(f.decimals) - frac.size(), '0');
    out += frac;
  }
  return out;
}

TickPrice parse_price(std::string_view text, double tick_size) {
  const TickFormat f = tick_format(tick_size);
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (frac.size() > static_cast<std::size_t>(f.decimals)) throw ParseError("price finer than the tick: " + std::string(text));
  std::int64_t v = parse_int<std::int64_t>(whole, "price") * f.scale;
  if (!frac.empty()) {
    std::int64_t fv = parse_int<std::int64_t>(frac, "price");
    for (std::size_t i = frac.size(); i < static_cast<std::size_t>(f.decimals); ++i) fv *= 10;
    v += fv;
  }
  if (v % f.units != 0) throw ParseError("price not on the tick grid: " + std::string(text));
  return TickPrice{v / f.units};
}

std::string_view side_name(Side s) noexcept { return s == Side::Bid ? "bid" : "ask"; }

Side parse_side(std::string_view text) {
  if (text == "bid") return Side::Bid;
  if (text == "ask") return Side::Ask;
  throw ParseError("bad side '" + std::string(text) + "'");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void write_events(std::ostream& out, std::span<const EventLogRecord> records, double tick_size) {
  out << kEventsHeader << '\n';
  std::string buf;
  buf.reserve(1 << 16);
  for (const auto& r : records) {
    put(buf, format_double(r.time));
    buf += ',';
    put_int(buf, r.seq);
    buf += ',';
    put_int(buf, r.agent);
    buf += ',';
    put(buf, to_string(r.action));
    buf += ',';
    if (r.side) put(buf, side_name(*r.side));
    buf += ',';
    if (r.price) put(buf, format_price(*r.price, tick_size));
    buf += ',';
    put_int(buf, r.volume);
    buf += ',';
    put_int(buf, r.trades);
    buf += ',';
    if (r.mid_after) put(buf, format_double(*r.mid_after));
    buf += ',';
    if (r.cascade) put_int(buf, r.cascade->id);
    buf += ',';
    if (r.cascade) put_int(buf, r.cascade->depth);
    buf += '\n';
    if (buf.size() > (1 << 16) - 256) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<EventLogRecord> read_events(std::istream& in, double tick_size) {
  expect_header(in, kEventsHeader);
  std::vector<EventLogRecord> records;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 11) throw ParseError("events.csv line " + std::to_string(line_no) + ": expected 11 fields");
    try {
      EventLogRecord r;
      r.time = parse_double(f[0]);
      r.seq = parse_int<std::uint64_t>(f[1], "seq");
      r.agent = parse_int<AgentId>(f[2], "agent");
      r.action = parse_action(f[3]);
      if (!f[4].empty()) r.side = parse_side(f[4]);
      if (!f[5].empty()) r.price = parse_price(f[5], tick_size);
      r.volume = parse_int<Volume>(f[6], "volume");
      r.trades = parse_int<std::uint32_t>(f[7], "trades");
      if (!f[8].empty()) r.mid_after = parse_double(f[8]);
      if (!f[9].empty())
        r.cascade = CascadeTag{parse_int<std::uint64_t>(f[9], "cascade_id"), parse_int<std::uint32_t>(f[10], "cascade_depth")};
      records.push_back(r);
    } catch (const std::exception& e) {
      throw ParseError("events.csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

void write_trades(std::ostream& out, std::span<const Trade> trades, double tick_size) {
  out << kTradesHeader << '\n';
  std::string buf;
  for (const auto& t : trades) {
    put(buf, format_double(t.time));
    buf += ',';
    put(buf, format_price(t.price, tick_size));
    buf += ',';
    put_int(buf, t.volume);
    buf += ',';
    put(buf, side_name(t.aggressor));
    buf += ',';
    put_int(buf, to_underlying(t.maker_order));
    buf += ',';
    put_int(buf, t.taker_agent);
    buf += '\n';
    if (buf.size() > (1 << 16)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_acf(std::ostream& out, const AcfTable& curves) {
  out << kAcfHeader << '\n';
  for (const auto& [label, acf] : curves)
    for (std::size_t k = 0; k < acf.values.size(); ++k) out << k << ',' << format_double(acf.values[k]) << ',' << label << '\n';
}

AcfTable read_acf(std::istream& in) {
  expect_header(in, kAcfHeader);
  AcfTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 3) throw ParseError("acf.csv: expected 3 fields");
    const auto lag = parse_int<std::size_t>(f[0], "lag");
    const std::string label(f[2]);
    if (table.empty() || table.back().first != label) table.emplace_back(label, AcfResult{});
    auto& values = table.back().second.values;
    if (lag != values.size()) throw ParseError("acf.csv: lags must be consecutive from 0 per realization");
    values.push_back(parse_double(f[1]));
  }
  return table;
}

void write_histogram(std::ostream& out, const Histogram& h) {
  out << kHistHeader << '\n';
  out << "-inf," << format_double(h.edges.front()) << ',' << h.underflow << '\n';
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
  out << format_double(h.edges.back()) << ",inf," << h.overflow << '\n';
}

Histogram read_histogram(std::istream& in) {
  expect_header(in, kHistHeader);
  Histogram h;
  std::string line;
  std::vector<std::pair<std::pair<double, double>, std::uint64_t>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 3) throw ParseError("hist.csv: expected 3 fields");
    rows.push_back({{parse_double(f[0]), parse_double(f[1])}, parse_int<std::uint64_t>(f[2], "count")});
  }
  if (rows.size() < 3) throw ParseError("hist.csv: need underflow, at least one bin, overflow");
  h.underflow = rows.front().second;
  h.overflow = rows.back().second;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    if (i == 1) h.edges.push_back(rows[i].first.first);
    h.edges.push_back(rows[i].first.second);
    h.counts.push_back(rows[i].second);
  }
  return h;
}

void write_summary(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) out << r.scenario << ',' << r.metric << ',' << format_double(r.value) << '\n';
}

std::vector<SummaryRow> read_summary(std::istream& in) {
  expect_header(in, kSummaryHeader);
  std::vector<SummaryRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 3) throw ParseError("summary.csv: expected 3 fields");
    rows.push_back({std::string(f[0]), std::string(f[1]), parse_double(f[2])});
  }
  return rows;
}

} // namespace lobnet::csv
