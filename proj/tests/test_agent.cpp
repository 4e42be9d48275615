#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "lobnet/agent.hpp"
#include "lobnet/random.hpp"

using namespace lobnet;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// E[max(1, round(m + s z))] by summing the exact rounding-cell probabilities.
double clamped_volume_mean(double m, double s) {
  double mean = 1.0 * normal_cdf((1.5 - m) / s);
  for (int k = 2; k < 200; ++k) mean += k * (normal_cdf((k + 0.5 - m) / s) - normal_cdf((k - 0.5 - m) / s));
  return mean;
}

} // namespace

TEST_SUITE("agent") {

TEST_CASE("parameters must be positive") {
  AgentParams p;
  CHECK_NOTHROW(p.validate());
  p.lambda_f = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("derived seeds are distinct per stream") {
  CHECK(derive_seed(1, stream::network) != derive_seed(1, stream::spreading));
  CHECK(derive_seed(1, stream::agent_base) != derive_seed(2, stream::agent_base));
  CHECK(derive_seed(9, 3) == derive_seed(9, 3));
}

TEST_CASE("waiting times are exponential with the given mean") {
  Rng rng(1);
  const int n = 200000;
  double sum = 0;
  int beyond = 0;
  for (int i = 0; i < n; ++i) {
    const double w = sample_waiting_time(5000.0, rng);
    REQUIRE(w > 0);
    sum += w;
    beyond += w > 10000.0;
  }
  CHECK(sum / n == doctest::Approx(5000.0).epsilon(0.01));
  CHECK(static_cast<double>(beyond) / n == doctest::Approx(std::exp(-2.0)).epsilon(0.03));
}

TEST_CASE("directions are fair coin flips") {
  Rng rng(2);
  int bids = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) bids += sample_direction(rng) == Side::Bid;
  CHECK(static_cast<double>(bids) / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("volumes round half away from zero and floor at one") {
  CHECK(volume_from_draw(2.5) == 3);
  CHECK(volume_from_draw(2.49) == 2);
  CHECK(volume_from_draw(0.4) == 1);
  CHECK(volume_from_draw(-3.0) == 1);

  Rng rng(3);
  AgentParams p;
  const int n = 400000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const Volume v = sample_volume(p, rng);
    REQUIRE(v >= 1);
    sum += static_cast<double>(v);
  }
  CHECK(sum / n == doctest::Approx(clamped_volume_mean(5.0, 1.5)).epsilon(0.005));
}

TEST_CASE("limit prices have the configured dispersion at the reference price") {
  Rng rng(4);
  const PriceLaw law = PriceLaw::from(AgentParams{}, 100.0, 0.01);
  CHECK(law.sigma_log == doctest::Approx(0.02));
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double p = static_cast<double>(sample_limit_price(100.0, law, rng).ticks) * 0.01;
    sum += p;
    sq += p * p;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  const double s2 = law.sigma_log * law.sigma_log;
  const double expected = 100.0 * std::sqrt(std::exp(s2) * (std::exp(s2) - 1.0));
  CHECK(expected == doctest::Approx(2.0006).epsilon(1e-4));
  CHECK(sd == doctest::Approx(expected).epsilon(0.02));
  CHECK(mean == doctest::Approx(100.0 * std::exp(s2 / 2)).epsilon(0.001));
}

TEST_CASE("price rounding and clamping") {
  CHECK(price_from_draw(100.0, 0.0, 0.01).ticks == 10000);
  CHECK(price_from_draw(0.001, 0.0, 0.01).ticks == 1);
  CHECK(price_from_draw(100.0, -50.0, 0.01).ticks == 1);
  CHECK(price_from_draw(1e300, 10.0, 0.01).ticks == kMaxPriceTicks);
}

TEST_CASE("agent state supports O(1) removal and uniform picks") {
  AgentState s(3);
  Rng rng(5);
  CHECK_FALSE(pick_cancellation_target(s, rng));
  for (std::uint64_t i = 1; i <= 4; ++i) s.add(OrderId{i});
  CHECK(s.remove(OrderId{2}));
  CHECK_FALSE(s.remove(OrderId{2}));
  CHECK(s.size() == 3);
  CHECK_FALSE(s.contains(OrderId{2}));

  std::map<std::uint64_t, int> hits;
  const int n = 90000;
  for (int i = 0; i < n; ++i) hits[to_underlying(*pick_cancellation_target(s, rng))]++;
  CHECK(hits.size() == 3);
  for (const auto& [id, c] : hits) CHECK(static_cast<double>(c) / n == doctest::Approx(1.0 / 3).epsilon(0.03));
}

TEST_CASE("empty-state pick still consumes a draw") {
  Rng a(6), b(6);
  AgentState empty;
  pick_cancellation_target(empty, a);
  b.next();
  CHECK(a.next() == b.next());
}

} // TEST_SUITE
