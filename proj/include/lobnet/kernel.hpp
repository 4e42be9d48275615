#pragma once
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "lobnet/agent.hpp"
#include "lobnet/event_log.hpp"
#include "lobnet/network.hpp"
#include "lobnet/order_book.hpp"
#include "lobnet/random.hpp"

namespace lobnet {

enum class OrderKind : std::uint8_t { Market, Limit };
enum class EventKind : std::uint8_t { SourceMarket, SourceLimit, SourceCancel, FollowUp };

struct EventPayload {
  EventKind kind{EventKind::SourceLimit};
  AgentId agent{0};
  bool recurring{true};  // source clocks reschedule themselves
  // FollowUp only
  OrderKind order_kind{OrderKind::Limit};
  Side direction{Side::Bid};
  AgentId sender{0};
  CascadeTag cascade{};
};

struct Event {
  SimTime time{0.0};
  std::uint64_t seq{0};
  EventPayload payload{};
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const noexcept {
    return a.time != b.time ? a.time > b.time : a.seq > b.seq;
  }
};

using EventQueue = std::priority_queue<Event, std::vector<Event>, EventAfter>;

struct SimConfig {
  std::size_t n_agents{1000};
  NetworkSpec network{};
  double q{0.0625};
  AgentParams agent{};
  double tick_size{0.01};
  double p_ref{100.0};
  SimTime horizon{720000.0};
  SimTime burn_in{72000.0};
  std::uint64_t seed{1};
  std::optional<std::uint64_t> max_events;

  /// Throws lobnet::Error naming the violated invariant.
  void validate() const;
};

/// Last two-sided mid; starts at the reference price and never goes stale to zero.
class MidTracker {
public:
  explicit MidTracker(double p_ref) : last_(p_ref) {}
  void update(const BookQuotes& q) {
    if (q.mid) last_ = *q.mid;
  }
  double value() const noexcept { return last_; }

private:
  double last_;
};

class RunawayCascade : public Error {
public:
  using Error::Error;
};

/// Overrides the Bernoulli(q) follow decision when set; receives (sender, receiver).
using FollowDecision = std::function<bool(AgentId, AgentId)>;

/// Single-threaded discrete-event loop over one book, one agent population and
/// an optional interaction graph.
///
/// rng layout: agent i draws everything about its own source actions from
/// stream agent_base + i; all cascade randomness (follow decisions, delays,
/// follow-up volumes and prices) comes from the spreading stream. With q = 0 the
/// source record stream is therefore identical to a run without a network.
class Kernel {
public:
  /// graph may be null (no interaction). It must outlive the kernel.
  Kernel(const SimConfig& config, const Graph* graph);

  /// First occurrence of each of the three source clocks for every agent.
  void init_schedule();
  void schedule_source(AgentId agent, EventKind kind, SimTime time, bool recurring = true);

  /// Offers the order decision of `origin` to its neighbours except `excluded`.
  /// `depth` is the origin's own cascade depth. Returns follow-ups scheduled.
  std::size_t propagate(AgentId origin, OrderKind kind, Side direction, std::optional<AgentId> excluded,
                        std::uint64_t cascade_id, std::uint32_t depth);

  /// Processes the next event if its time is within the horizon.
  bool step();
  void run();

  void set_follow_decision(FollowDecision decide) { follow_decision_ = std::move(decide); }

  SimTime now() const noexcept { return now_; }
  const EventLog& log() const noexcept { return log_; }
  EventLog take_log() { return std::move(log_); }
  const OrderBook& book() const noexcept { return book_; }
  const MidTracker& mid() const noexcept { return mid_; }
  const AgentState& agent_state(AgentId a) const { return agents_.at(a); }
  const EventQueue& queue() const noexcept { return queue_; }

private:
  void handle_source_action(const Event& ev);
  void handle_followup(const Event& ev);
  // Submits an order and keeps agent states in sync with fills; returns trade count.
  std::uint32_t place(AgentId agent, OrderKind kind, Side side, Volume volume, std::optional<TickPrice> price);
  void push(SimTime time, const EventPayload& payload);
  double mean_wait(EventKind kind) const;
  Rng& agent_rng(AgentId agent);

  SimConfig config_;
  const Graph* graph_;
  PriceLaw price_law_;
  OrderBook book_;
  MidTracker mid_;
  std::vector<AgentState> agents_;
  // Engines are created on first use; large graphs mostly host follow-ups only.
  std::vector<std::unique_ptr<Rng>> agent_rngs_;
  Rng spread_rng_;
  EventQueue queue_;
  EventLog log_;
  FollowDecision follow_decision_;
  std::uint64_t next_seq_{1};
  SimTime now_{0.0};
};

/// Builds the configured network from the seed's network stream, then runs.
EventLog run(const SimConfig& config);
/// Runs on a caller-supplied graph (null for no interaction).
EventLog run(const SimConfig& config, const Graph* graph);

} // namespace lobnet
