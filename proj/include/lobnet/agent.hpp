#pragma once
#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lobnet/random.hpp"
#include "lobnet/types.hpp"

namespace lobnet {

/// Behavioural parameters shared by every agent in a run. The lambdas are mean
/// waiting times in simulation time units, not rates.
struct AgentParams {
  double lambda_m{20000.0};  // market orders
  double lambda_l{5000.0};   // limit orders
  double lambda_c{40000.0};  // cancellations
  double lambda_f{1000.0};   // follow-up delay
  double m_s{5.0};           // mean volume
  double d_s{1.5};           // volume std
  double d_p{2.0};           // price std at the reference price

  /// Throws lobnet::Error if any parameter is not strictly positive.
  void validate() const;
};

/// Log-price law for limit orders: price = mid * exp(sigma_log * z), z ~ N(0,1).
/// sigma_log is fixed at run start as d_p / p_ref.
struct PriceLaw {
  double sigma_log{0.02};
  double tick_size{0.01};

  static PriceLaw from(const AgentParams& params, double p_ref, double tick_size) {
    return PriceLaw{params.d_p / p_ref, tick_size};
  }
};

/// Resting orders owned by one agent, with O(1) insert, erase and uniform pick.
class AgentState {
public:
  explicit AgentState(AgentId agent = 0) : agent_(agent) {}

  AgentId agent() const noexcept { return agent_; }
  void add(OrderId id);
  /// Returns false if the id was not present.
  bool remove(OrderId id);
  bool contains(OrderId id) const { return slot_.contains(to_underlying(id)); }
  std::size_t size() const noexcept { return orders_.size(); }
  bool empty() const noexcept { return orders_.empty(); }
  OrderId at(std::size_t i) const { return orders_.at(i); }

private:
  AgentId agent_;
  std::vector<OrderId> orders_;
  std::unordered_map<std::uint64_t, std::size_t> slot_;
};

SimTime sample_waiting_time(double mean, Rng& rng);
Side sample_direction(Rng& rng);

/// Rounds half away from zero and floors at one share.
Volume volume_from_draw(double draw) noexcept;
Volume sample_volume(const AgentParams& params, Rng& rng);

/// Highest representable limit price. Interaction-driven runs can drift the
/// log-price without bound; prices saturate here instead of overflowing.
inline constexpr std::int64_t kMaxPriceTicks = 1'000'000'000'000'000;

/// reference_mid * exp(log_multiplier), rounded to the nearest tick, clamped to [1, kMaxPriceTicks].
TickPrice price_from_draw(double reference_mid, double log_multiplier, double tick_size) noexcept;
TickPrice sample_limit_price(double reference_mid, const PriceLaw& law, Rng& rng);

/// Uniform pick among the agent's resting orders. Always consumes one draw.
std::optional<OrderId> pick_cancellation_target(const AgentState& state, Rng& rng);

} // namespace lobnet
