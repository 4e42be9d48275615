#pragma once
#include <cstddef>
#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lobnet/types.hpp"

namespace lobnet {

struct LimitOrder {
  OrderId id{};
  AgentId agent{0};
  Side side{Side::Bid};
  TickPrice price{};
  Volume remaining{0};
  SimTime entry_time{0.0};
  std::uint64_t entry_seq{0};
};

struct Trade {
  SimTime time{0.0};
  TickPrice price{};  // always the maker's limit price
  Volume volume{0};
  Side aggressor{Side::Bid};
  OrderId maker_order{};
  AgentId maker_agent{0};
  AgentId taker_agent{0};
  bool maker_filled{false};  // maker left the book with this trade
};

struct BookQuotes {
  std::optional<TickPrice> best_bid;
  std::optional<TickPrice> best_ask;
  std::optional<double> mid;     // price units
  std::optional<double> spread;  // price units
};

struct LimitReport {
  std::vector<Trade> trades;
  std::optional<OrderId> resting_order;
  Volume rested_volume{0};
};

struct MarketReport {
  std::vector<Trade> trades;
  Volume discarded_volume{0};
};

struct DepthLevel {
  Side side{Side::Bid};
  TickPrice price{};
  Volume volume{0};
  std::size_t order_count{0};
  bool operator==(const DepthLevel&) const = default;
};

/// Continuous double auction with price-time priority.
///
/// Each side is a price-keyed tree of FIFO queues; an id index gives O(1)
/// cancellation. Trades always execute at the resting order's price. A limit
/// order that crosses the opposite best executes up to its limit and rests the
/// remainder; an unfilled market-order remainder is discarded.
///
/// One instance is single-writer. Separate instances share nothing.
class OrderBook {
public:
  explicit OrderBook(double tick_size = 0.01);

  LimitReport submit_limit(AgentId agent, Side side, TickPrice price, Volume volume, SimTime time);
  MarketReport submit_market(AgentId agent, Side side, Volume volume, SimTime time);

  /// Remaining volume removed from the book, or nullopt when the order is gone
  /// (already fully executed or cancelled before).
  std::optional<Volume> cancel(OrderId id);

  BookQuotes quotes() const;

  /// Per-level aggregate: bids from best (highest) down, then asks from best up.
  std::vector<DepthLevel> depth_snapshot() const;

  const LimitOrder* find(OrderId id) const;
  std::size_t resting_orders() const noexcept { return index_.size(); }
  double tick_size() const noexcept { return tick_size_; }
  double to_price(TickPrice p) const noexcept { return static_cast<double>(p.ticks) * tick_size_; }

private:
  struct Level {
    std::list<LimitOrder> queue;
    Volume total{0};
  };
  using Ladder = std::map<std::int64_t, Level>;

  struct Locator {
    Side side;
    std::int64_t price;
    std::list<LimitOrder>::iterator it;
  };

  // Matches against the opposite side while the limit allows; returns the unfilled volume.
  Volume match(AgentId taker, Side aggressor, std::optional<std::int64_t> limit, Volume volume,
               SimTime time, std::vector<Trade>& trades);

  Ladder& ladder(Side s) noexcept { return s == Side::Bid ? bids_ : asks_; }

  double tick_size_;
  Ladder bids_;
  Ladder asks_;
  std::unordered_map<std::uint64_t, Locator> index_;
  std::uint64_t next_id_{1};
  std::uint64_t next_seq_{1};
};

} // namespace lobnet
