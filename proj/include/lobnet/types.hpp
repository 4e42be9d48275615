#pragma once
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lobnet {

using AgentId = std::uint32_t;
using Volume = std::int64_t;
using SimTime = double;

enum class Side : std::uint8_t { Bid, Ask };

constexpr Side opposite(Side s) noexcept { return s == Side::Bid ? Side::Ask : Side::Bid; }
constexpr int sign_of(Side s) noexcept { return s == Side::Bid ? +1 : -1; }

// Integer number of ticks; the tick size is a run-level constant held by the book.
struct TickPrice {
  std::int64_t ticks{0};
  auto operator<=>(const TickPrice&) const = default;
};

enum class OrderId : std::uint64_t {};

constexpr std::uint64_t to_underlying(OrderId id) noexcept { return static_cast<std::uint64_t>(id); }

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace lobnet
