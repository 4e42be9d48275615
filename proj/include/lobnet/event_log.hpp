#pragma once
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lobnet/order_book.hpp"
#include "lobnet/types.hpp"

namespace lobnet {

enum class Action : std::uint8_t { LimitPlaced, MarketPlaced, Cancelled, FollowUpLimit, FollowUpMarket };

std::string_view to_string(Action a) noexcept;
Action parse_action(std::string_view text);

constexpr bool is_follow_up(Action a) noexcept { return a == Action::FollowUpLimit || a == Action::FollowUpMarket; }

struct CascadeTag {
  std::uint64_t id{0};     // seq of the originating source event
  std::uint32_t depth{0};  // hops from the source
  bool operator==(const CascadeTag&) const = default;
};

/// One agent action. Cancellations carry no cascade tag; a cancellation clock
/// that fires with nothing resting is logged with volume 0 and no side.
struct EventLogRecord {
  SimTime time{0.0};
  std::uint64_t seq{0};
  AgentId agent{0};
  Action action{Action::LimitPlaced};
  std::optional<Side> side;  // absent for a cancellation that found no resting order
  std::optional<TickPrice> price;
  Volume volume{0};
  std::uint32_t trades{0};
  std::optional<double> mid_after;
  std::optional<CascadeTag> cascade;
  bool operator==(const EventLogRecord&) const = default;
};

struct EventLog {
  std::vector<EventLogRecord> records;
  std::vector<Trade> trades;
  std::uint64_t events_processed{0};  // every popped event, including no-op cancellations
  std::uint64_t source_events{0};
  std::uint64_t follow_ups{0};
};

} // namespace lobnet
