#include "lobnet/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lobnet {

std::string_view to_string(Action a) noexcept {
  switch (a) {
    case Action::LimitPlaced: return "LimitPlaced";
    case Action::MarketPlaced: return "MarketPlaced";
    case Action::Cancelled: return "Cancelled";
    case Action::FollowUpLimit: return "FollowUpLimit";
    case Action::FollowUpMarket: return "FollowUpMarket";
  }
  return "LimitPlaced";
}

Action parse_action(std::string_view text) {
  if (text == "LimitPlaced") return Action::LimitPlaced;
  if (text == "MarketPlaced") return Action::MarketPlaced;
  if (text == "Cancelled") return Action::Cancelled;
  if (text == "FollowUpLimit") return Action::FollowUpLimit;
  if (text == "FollowUpMarket") return Action::FollowUpMarket;
  throw std::invalid_argument("unknown action '" + std::string(text) + "'");
}

void SimConfig::validate() const {
  if (n_agents < 1) throw Error("n_agents must be >= 1");
  if (!(q >= 0.0 && q <= 1.0)) throw Error("q must lie in [0, 1]");
  agent.validate();
  if (!(tick_size > 0.0)) throw Error("tick_size must be positive");
  if (!(p_ref > 0.0)) throw Error("p_ref must be positive");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw Error("horizon must be finite and >= 0");
  if (!(burn_in >= 0.0)) throw Error("burn_in must be >= 0");
  if (!(burn_in <= horizon)) throw Error("burn_in must not exceed horizon");
  switch (network.kind) {
    case NetworkKind::None: break;
    case NetworkKind::LatticeX:
      if (network.lattice_rows < 3 || network.lattice_cols < 3) throw Error("lattice dimensions must be >= 3");
      if (network.lattice_rows * network.lattice_cols != n_agents)
        throw Error("lattice_rows * lattice_cols must equal n_agents");
      break;
    case NetworkKind::ErdosRenyi:
      if (network.er_edges > n_agents * (n_agents - 1) / 2) throw Error("er_edges exceeds n(n-1)/2");
      break;
    case NetworkKind::BarabasiAlbert:
      if (network.ba_attach < 1 || n_agents <= network.ba_attach)
        throw Error("ba_attach must satisfy 1 <= ba_attach < n_agents");
      break;
  }
}

Kernel::Kernel(const SimConfig& config, const Graph* graph)
    : config_(config),
      graph_(graph),
      price_law_(PriceLaw::from(config.agent, config.p_ref, config.tick_size)),
      book_(config.tick_size),
      mid_(config.p_ref),
      spread_rng_(derive_seed(config.seed, stream::spreading)) {
  config_.validate();
  if (graph_ && graph_->node_count() != config_.n_agents)
    throw Error("graph node count does not match n_agents");
  agents_.reserve(config_.n_agents);
  agent_rngs_.resize(config_.n_agents);
  for (std::size_t i = 0; i < config_.n_agents; ++i) agents_.emplace_back(static_cast<AgentId>(i));
}

double Kernel::mean_wait(EventKind kind) const {
  switch (kind) {
    case EventKind::SourceMarket: return config_.agent.lambda_m;
    case EventKind::SourceLimit: return config_.agent.lambda_l;
    case EventKind::SourceCancel: return config_.agent.lambda_c;
    case EventKind::FollowUp: return config_.agent.lambda_f;
  }
  return config_.agent.lambda_f;
}

Rng& Kernel::agent_rng(AgentId agent) {
  auto& slot = agent_rngs_[agent];
  if (!slot) slot = std::make_unique<Rng>(derive_seed(config_.seed, stream::agent_base + agent));
  return *slot;
}

void Kernel::push(SimTime time, const EventPayload& payload) { queue_.push(Event{time, next_seq_++, payload}); }

void Kernel::init_schedule() {
  for (std::size_t i = 0; i < config_.n_agents; ++i) {
    Rng& rng = agent_rng(static_cast<AgentId>(i));
    for (const EventKind kind : {EventKind::SourceMarket, EventKind::SourceLimit, EventKind::SourceCancel}) {
      EventPayload p;
      p.kind = kind;
      p.agent = static_cast<AgentId>(i);
      push(now_ + sample_waiting_time(mean_wait(kind), rng), p);
    }
  }
}

void Kernel::schedule_source(AgentId agent, EventKind kind, SimTime time, bool recurring) {
  if (kind == EventKind::FollowUp) throw std::invalid_argument("schedule_source takes a source kind");
  if (agent >= config_.n_agents) throw std::out_of_range("agent index out of range");
  EventPayload p;
  p.kind = kind;
  p.agent = agent;
  p.recurring = recurring;
  push(time, p);
}

std::uint32_t Kernel::place(AgentId agent, OrderKind kind, Side side, Volume volume, std::optional<TickPrice> price) {
  const std::size_t first = log_.trades.size();
  if (kind == OrderKind::Limit) {
    LimitReport rep = book_.submit_limit(agent, side, *price, volume, now_);
    if (rep.resting_order) agents_[agent].add(*rep.resting_order);
    log_.trades.insert(log_.trades.end(), rep.trades.begin(), rep.trades.end());
  } else {
    MarketReport rep = book_.submit_market(agent, side, volume, now_);
    log_.trades.insert(log_.trades.end(), rep.trades.begin(), rep.trades.end());
  }
  for (std::size_t i = first; i < log_.trades.size(); ++i) {
    const Trade& t = log_.trades[i];
    if (t.maker_filled) agents_[t.maker_agent].remove(t.maker_order);
  }
  mid_.update(book_.quotes());
  return static_cast<std::uint32_t>(log_.trades.size() - first);
}

std::size_t Kernel::propagate(AgentId origin, OrderKind kind, Side direction, std::optional<AgentId> excluded,
                              std::uint64_t cascade_id, std::uint32_t depth) {
  if (!graph_) return 0;
  if (config_.q <= 0.0 && !follow_decision_) return 0;
  std::size_t scheduled = 0;
  for (const AgentId neighbour : graph_->neighbors(origin)) {
    if (excluded && neighbour == *excluded) continue;
    const bool follows = follow_decision_ ? follow_decision_(origin, neighbour) : spread_rng_.bernoulli(config_.q);
    if (!follows) continue;
    EventPayload p;
    p.kind = EventKind::FollowUp;
    p.agent = neighbour;
    p.order_kind = kind;
    p.direction = direction;
    p.sender = origin;
    p.cascade = CascadeTag{cascade_id, depth + 1};
    push(now_ + sample_waiting_time(config_.agent.lambda_f, spread_rng_), p);
    ++scheduled;
  }
  log_.follow_ups += scheduled;
  return scheduled;
}

void Kernel::handle_source_action(const Event& ev) {
  const EventPayload& p = ev.payload;
  const AgentId agent = p.agent;
  Rng& rng = agent_rng(agent);
  ++log_.source_events;

  if (p.kind == EventKind::SourceCancel) {
    EventLogRecord rec{now_, ev.seq, agent, Action::Cancelled, std::nullopt, std::nullopt, 0, 0, std::nullopt,
                       std::nullopt};
    if (const auto target = pick_cancellation_target(agents_[agent], rng)) {
      const LimitOrder* order = book_.find(*target);
      rec.side = order->side;
      rec.price = order->price;
      rec.volume = book_.cancel(*target).value_or(0);
      agents_[agent].remove(*target);
      mid_.update(book_.quotes());
    }
    rec.mid_after = book_.quotes().mid;
    log_.records.push_back(rec);
  } else {
    const OrderKind kind = p.kind == EventKind::SourceMarket ? OrderKind::Market : OrderKind::Limit;
    const Side side = sample_direction(rng);
    const Volume volume = sample_volume(config_.agent, rng);
    std::optional<TickPrice> price;
    if (kind == OrderKind::Limit) price = sample_limit_price(mid_.value(), price_law_, rng);
    const std::uint32_t trades = place(agent, kind, side, volume, price);
    const CascadeTag tag{ev.seq, 0};
    log_.records.push_back(EventLogRecord{now_, ev.seq, agent,
                                          kind == OrderKind::Market ? Action::MarketPlaced : Action::LimitPlaced, side,
                                          price, volume, trades, book_.quotes().mid, tag});
    propagate(agent, kind, side, std::nullopt, tag.id, 0);
  }

  if (p.recurring) push(now_ + sample_waiting_time(mean_wait(p.kind), rng), p);
}

void Kernel::handle_followup(const Event& ev) {
  const EventPayload& p = ev.payload;
  const Volume volume = sample_volume(config_.agent, spread_rng_);
  std::optional<TickPrice> price;
  if (p.order_kind == OrderKind::Limit) price = sample_limit_price(mid_.value(), price_law_, spread_rng_);
  const std::uint32_t trades = place(p.agent, p.order_kind, p.direction, volume, price);
  log_.records.push_back(EventLogRecord{
      now_, ev.seq, p.agent, p.order_kind == OrderKind::Market ? Action::FollowUpMarket : Action::FollowUpLimit,
      p.direction, price, volume, trades, book_.quotes().mid, p.cascade});
  propagate(p.agent, p.order_kind, p.direction, p.sender, p.cascade.id, p.cascade.depth);
}

bool Kernel::step() {
  if (queue_.empty() || queue_.top().time > config_.horizon) return false;
  const Event ev = queue_.top();
  queue_.pop();
  if (config_.max_events && log_.events_processed >= *config_.max_events)
    throw RunawayCascade("event cap of " + std::to_string(*config_.max_events) + " exceeded at t=" +
                         std::to_string(ev.time) + " (seed " + std::to_string(config_.seed) + ")");
  ++log_.events_processed;
  now_ = ev.time;
  if (ev.payload.kind == EventKind::FollowUp)
    handle_followup(ev);
  else
    handle_source_action(ev);
  return true;
}

void Kernel::run() {
  while (step()) {
  }
}

EventLog run(const SimConfig& config, const Graph* graph) {
  Kernel kernel(config, graph);
  kernel.init_schedule();
  kernel.run();
  return kernel.take_log();
}

EventLog run(const SimConfig& config) {
  config.validate();
  Rng net_rng(derive_seed(config.seed, stream::network));
  const std::optional<Graph> graph = build_network(config.network, config.n_agents, net_rng);
  return run(config, graph ? &*graph : nullptr);
}

} // namespace lobnet
