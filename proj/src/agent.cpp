#include "lobnet/agent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lobnet {

void AgentParams::validate() const {
  const auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(std::string(name) + " must be strictly positive");
  };
  check(lambda_m, "lambda_m");
  check(lambda_l, "lambda_l");
  check(lambda_c, "lambda_c");
  check(lambda_f, "lambda_f");
  check(m_s, "m_s");
  check(d_s, "d_s");
  check(d_p, "d_p");
}

void AgentState::add(OrderId id) {
  if (slot_.emplace(to_underlying(id), orders_.size()).second) orders_.push_back(id);
}

bool AgentState::remove(OrderId id) {
  const auto found = slot_.find(to_underlying(id));
  if (found == slot_.end()) return false;
  const std::size_t i = found->second;
  slot_.erase(found);
  if (i + 1 != orders_.size()) {
    orders_[i] = orders_.back();
    slot_[to_underlying(orders_[i])] = i;
  }
  orders_.pop_back();
  return true;
}

SimTime sample_waiting_time(double mean, Rng& rng) { return rng.exponential(mean); }

Side sample_direction(Rng& rng) { return rng.bernoulli(0.5) ? Side::Bid : Side::Ask; }

Volume volume_from_draw(double draw) noexcept {
  return std::max<Volume>(1, static_cast<Volume>(std::llround(draw)));
}

Volume sample_volume(const AgentParams& params, Rng& rng) {
  return volume_from_draw(params.m_s + params.d_s * rng.standard_normal());
}

TickPrice price_from_draw(double reference_mid, double log_multiplier, double tick_size) noexcept {
  const double ticks = reference_mid * std::exp(log_multiplier) / tick_size;
  if (!(ticks < static_cast<double>(kMaxPriceTicks))) return TickPrice{kMaxPriceTicks};
  return TickPrice{std::max<std::int64_t>(1, std::llround(ticks))};
}

TickPrice sample_limit_price(double reference_mid, const PriceLaw& law, Rng& rng) {
  return price_from_draw(reference_mid, law.sigma_log * rng.standard_normal(), law.tick_size);
}

std::optional<OrderId> pick_cancellation_target(const AgentState& state, Rng& rng) {
  const auto i = rng.below(std::max<std::size_t>(state.size(), 1));
  if (state.empty()) return std::nullopt;
  return state.at(i);
}

} // namespace lobnet
