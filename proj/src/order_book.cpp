#include "lobnet/order_book.hpp"

#include <iterator>
#include <stdexcept>

namespace lobnet {

OrderBook::OrderBook(double tick_size) : tick_size_(tick_size) {
  if (!(tick_size > 0.0)) throw std::invalid_argument("tick size must be positive");
}

Volume OrderBook::match(AgentId taker, Side aggressor, std::optional<std::int64_t> limit, Volume volume,
                        SimTime time, std::vector<Trade>& trades) {
  Ladder& book = ladder(opposite(aggressor));
  while (volume > 0 && !book.empty()) {
    auto level_it = aggressor == Side::Bid ? book.begin() : std::prev(book.end());
    const std::int64_t level_price = level_it->first;
    if (limit) {
      if (aggressor == Side::Bid && level_price > *limit) break;
      if (aggressor == Side::Ask && level_price < *limit) break;
    }
    Level& level = level_it->second;
    while (volume > 0 && !level.queue.empty()) {
      LimitOrder& maker = level.queue.front();
      const Volume fill = std::min(volume, maker.remaining);
      maker.remaining -= fill;
      level.total -= fill;
      volume -= fill;
      const bool filled = maker.remaining == 0;
      trades.push_back(Trade{time, TickPrice{level_price}, fill, aggressor, maker.id, maker.agent, taker, filled});
      if (filled) {
        index_.erase(to_underlying(maker.id));
        level.queue.pop_front();
      }
    }
    if (level.queue.empty()) book.erase(level_it);
  }
  return volume;
}

LimitReport OrderBook::submit_limit(AgentId agent, Side side, TickPrice price, Volume volume, SimTime time) {
  if (volume < 1) throw std::invalid_argument("limit order volume must be >= 1");
  if (price.ticks < 1) throw std::invalid_argument("limit order price must be >= 1 tick");

  LimitReport report;
  const Volume left = match(agent, side, price.ticks, volume, time, report.trades);
  if (left > 0) {
    const OrderId id{next_id_++};
    Level& level = ladder(side)[price.ticks];
    level.queue.push_back(LimitOrder{id, agent, side, price, left, time, next_seq_++});
    level.total += left;
    index_.emplace(to_underlying(id), Locator{side, price.ticks, std::prev(level.queue.end())});
    report.resting_order = id;
    report.rested_volume = left;
  }
  return report;
}

MarketReport OrderBook::submit_market(AgentId agent, Side side, Volume volume, SimTime time) {
  if (volume < 1) throw std::invalid_argument("market order volume must be >= 1");
  MarketReport report;
  report.discarded_volume = match(agent, side, std::nullopt, volume, time, report.trades);
  return report;
}

std::optional<Volume> OrderBook::cancel(OrderId id) {
  const auto found = index_.find(to_underlying(id));
  if (found == index_.end()) return std::nullopt;
  const Locator loc = found->second;
  index_.erase(found);

  Ladder& book = ladder(loc.side);
  const auto level_it = book.find(loc.price);
  Level& level = level_it->second;
  const Volume removed = loc.it->remaining;
  level.total -= removed;
  level.queue.erase(loc.it);
  if (level.queue.empty()) book.erase(level_it);
  return removed;
}

BookQuotes OrderBook::quotes() const {
  BookQuotes q;
  if (!bids_.empty()) q.best_bid = TickPrice{bids_.rbegin()->first};
  if (!asks_.empty()) q.best_ask = TickPrice{asks_.begin()->first};
  if (q.best_bid && q.best_ask) {
    q.mid = 0.5 * static_cast<double>(q.best_bid->ticks + q.best_ask->ticks) * tick_size_;
    q.spread = static_cast<double>(q.best_ask->ticks - q.best_bid->ticks) * tick_size_;
  }
  return q;
}

std::vector<DepthLevel> OrderBook::depth_snapshot() const {
  std::vector<DepthLevel> out;
  out.reserve(bids_.size() + asks_.size());
  for (auto it = bids_.rbegin(); it != bids_.rend(); ++it)
    out.push_back(DepthLevel{Side::Bid, TickPrice{it->first}, it->second.total, it->second.queue.size()});
  for (const auto& [price, level] : asks_)
    out.push_back(DepthLevel{Side::Ask, TickPrice{price}, level.total, level.queue.size()});
  return out;
}

const LimitOrder* OrderBook::find(OrderId id) const {
  const auto found = index_.find(to_underlying(id));
  return found == index_.end() ? nullptr : &*found->second.it;
}

} // namespace lobnet
