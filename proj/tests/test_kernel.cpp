#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "lobnet/kernel.hpp"

using namespace lobnet;

namespace {

SimConfig small_config(std::size_t n, double horizon) {
  SimConfig c;
  c.n_agents = n;
  c.horizon = horizon;
  c.burn_in = 0.0;
  return c;
}

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (AgentId i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, e);
}

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (AgentId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

// Kolmogorov-Smirnov distance of a sample to the exponential cdf.
double ks_exponential(std::vector<double> x, double mean) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = 1.0 - std::exp(-x[i] / mean);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

} // namespace

TEST_SUITE("kernel") {

TEST_CASE("config validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  c.q = 1.5;
  CHECK_THROWS_AS(c.validate(), Error);
  c = SimConfig{};
  c.burn_in = 800000;
  CHECK_THROWS_AS(c.validate(), Error);
  c = SimConfig{};
  c.network.kind = NetworkKind::LatticeX;
  c.network.lattice_rows = 10;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("initial schedule has three clocks per agent") {
  Kernel k(small_config(50, 1000.0), nullptr);
  k.init_schedule();
  CHECK(k.queue().size() == 150);
}

TEST_CASE("first event time has the superposed mean") {
  const AgentParams p;
  const double expected = 1.0 / (1000.0 * (1.0 / p.lambda_m + 1.0 / p.lambda_l + 1.0 / p.lambda_c));
  CHECK(expected == doctest::Approx(3.636).epsilon(1e-3));
  double sum = 0;
  const int inits = 4000;
  for (int s = 0; s < inits; ++s) {
    SimConfig c;
    c.seed = static_cast<std::uint64_t>(s + 1);
    Kernel k(c, nullptr);
    k.init_schedule();
    sum += k.queue().top().time;
  }
  CHECK(sum / inits == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("zero horizon gives an empty log") {
  SimConfig c;
  c.horizon = 0.0;
  c.burn_in = 0.0;
  const EventLog log = run(c);
  CHECK(log.records.empty());
  CHECK(log.events_processed == 0);
}

TEST_CASE("log is time ordered and mids are consistent") {
  SimConfig c = small_config(100, 200000.0);
  const EventLog log = run(c);
  REQUIRE(log.records.size() > 100);
  for (std::size_t i = 1; i < log.records.size(); ++i) {
    const auto& a = log.records[i - 1];
    const auto& b = log.records[i];
    REQUIRE((a.time < b.time || (a.time == b.time && a.seq < b.seq)));
  }
  std::uint64_t trades = 0;
  for (const auto& r : log.records) trades += r.trades;
  CHECK(trades == log.trades.size());
  CHECK(log.events_processed == log.records.size());
}

TEST_CASE("q = 0 produces no follow-ups and matches the no-network run") {
  SimConfig none = small_config(1000, 80000.0);
  SimConfig ba = none;
  ba.network.kind = NetworkKind::BarabasiAlbert;
  ba.q = 0.0;
  const EventLog a = run(none);
  const EventLog b = run(ba);
  CHECK(b.follow_ups == 0);
  CHECK(std::none_of(b.records.begin(), b.records.end(), [](const auto& r) { return is_follow_up(r.action); }));
  CHECK(a.records == b.records);
}

TEST_CASE("same seed gives the same log") {
  SimConfig c = small_config(1000, 50000.0);
  c.network.kind = NetworkKind::BarabasiAlbert;
  CHECK(run(c).records == run(c).records);
  SimConfig d = c;
  d.seed = 2;
  CHECK_FALSE(run(c).records == run(d).records);
}

TEST_CASE("star graph: expected follow-ups per source is degree times q") {
  const Graph g = star(64);
  SimConfig c = small_config(65, 1e9);
  c.q = 0.0625;
  Kernel k(c, &g);
  const int sources = 10000;
  for (int i = 0; i < sources; ++i) k.schedule_source(0, EventKind::SourceLimit, 10.0 * (i + 1), false);
  k.run();
  const double mean = static_cast<double>(k.log().follow_ups) / sources;
  CHECK(mean == doctest::Approx(4.0).epsilon(0.02));

  // Follow-up delays are exponential with mean lambda_f.
  std::map<std::uint64_t, double> source_time;
  std::vector<double> delays;
  for (const auto& r : k.log().records) {
    if (!is_follow_up(r.action)) {
      source_time[r.seq] = r.time;
    } else {
      REQUIRE(r.cascade);
      CHECK(r.cascade->depth == 1);
      delays.push_back(r.time - source_time.at(r.cascade->id));
    }
  }
  REQUIRE(delays.size() > 1000);
  CHECK(ks_exponential(delays, c.agent.lambda_f) < 1.63 / std::sqrt(static_cast<double>(delays.size())));
}

TEST_CASE("path graph with q = 1 spreads once along each direction") {
  const Graph g = path(3);
  SimConfig c = small_config(3, 1e9);
  c.q = 1.0;
  {
    Kernel k(c, &g);
    k.schedule_source(0, EventKind::SourceMarket, 1.0, false);
    k.run();
    CHECK(k.log().follow_ups == 2);
    REQUIRE(k.log().records.size() == 3);
    CHECK(k.log().records[1].agent == 1);
    CHECK(k.log().records[2].agent == 2);
    CHECK(k.log().records[2].cascade->depth == 2);
  }
  {
    Kernel k(c, &g);
    k.schedule_source(1, EventKind::SourceMarket, 1.0, false);
    k.run();
    CHECK(k.log().follow_ups == 2);
  }
}

TEST_CASE("follow-up limit orders belong to the follower and can be cancelled") {
  const Graph g = path(2);
  SimConfig c = small_config(2, 1e9);
  Kernel k(c, &g);
  k.set_follow_decision([](AgentId, AgentId) { return true; });
  k.schedule_source(0, EventKind::SourceLimit, 1.0, false);
  k.schedule_source(1, EventKind::SourceCancel, 1e7, false);
  k.run();
  REQUIRE(k.log().records.size() == 3);
  CHECK(k.log().records[1].action == Action::FollowUpLimit);
  CHECK(k.log().records[1].side == k.log().records[0].side);
  const auto& cancel = k.log().records[2];
  CHECK(cancel.action == Action::Cancelled);
  CHECK(cancel.volume == k.log().records[1].volume);
  CHECK(k.agent_state(1).empty());
  CHECK(k.book().resting_orders() == 1);
}

TEST_CASE("cancellation with nothing resting is logged as a no-op") {
  SimConfig c = small_config(1, 1e9);
  Kernel k(c, nullptr);
  k.schedule_source(0, EventKind::SourceCancel, 1.0, false);
  k.run();
  REQUIRE(k.log().records.size() == 1);
  CHECK(k.log().records[0].volume == 0);
  CHECK_FALSE(k.log().records[0].side);
}

TEST_CASE("event cap stops runaway cascades") {
  const Graph g = Graph(3, {{0, 1}, {1, 2}, {0, 2}});
  SimConfig c = small_config(3, 1e9);
  c.q = 1.0;
  c.max_events = 1000;
  Kernel k(c, &g);
  k.schedule_source(0, EventKind::SourceMarket, 1.0, false);
  CHECK_THROWS_AS(k.run(), RunawayCascade);
}

} // TEST_SUITE
