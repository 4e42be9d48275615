// Serial vs OpenMP acf kernels, plus matching-engine and event-loop throughput.
#include <benchmark/benchmark.h>

#include <vector>

#include "lobnet/agent.hpp"
#include "lobnet/kernel.hpp"
#include "lobnet/order_book.hpp"
#include "lobnet/random.hpp"
#include "lobnet/stats.hpp"

namespace {

std::vector<double> noise(std::size_t n) {
  lobnet::Rng rng(42);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.standard_normal();
  return v;
}

void BM_AcfSerial(benchmark::State& state) {
  const auto v = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lobnet::autocorrelation_serial(v, 500));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 500);
}

void BM_AcfParallel(benchmark::State& state) {
  const auto v = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lobnet::autocorrelation(v, 500));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 500);
}

BENCHMARK(BM_AcfSerial)->Arg(1 << 14)->Arg(64800);
BENCHMARK(BM_AcfParallel)->Arg(1 << 14)->Arg(64800);

void BM_OrderBookMixedFlow(benchmark::State& state) {
  lobnet::Rng rng(7);
  lobnet::OrderBook book(0.01);
  const lobnet::PriceLaw law{0.02, 0.01};
  std::vector<lobnet::OrderId> live;
  double t = 0.0;
  for (auto _ : state) {
    t += 1.0;
    const double u = rng.uniform();
    const auto side = lobnet::sample_direction(rng);
    if (u < 0.7) {
      const auto price = lobnet::sample_limit_price(100.0, law, rng);
      auto rep = book.submit_limit(0, side, price, 5, t);
      if (rep.resting_order) live.push_back(*rep.resting_order);
    } else if (u < 0.9) {
      benchmark::DoNotOptimize(book.submit_market(0, side, 5, t));
    } else if (!live.empty()) {
      const auto i = rng.below(live.size());
      book.cancel(live[i]);
      live[i] = live.back();
      live.pop_back();
    }
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OrderBookMixedFlow);

void BM_KernelNoInteraction(benchmark::State& state) {
  lobnet::SimConfig cfg;
  cfg.horizon = 72000.0;
  cfg.burn_in = 0.0;
  for (auto _ : state) {
    const auto log = lobnet::run(cfg);
    state.counters["events"] = static_cast<double>(log.events_processed);
  }
}
BENCHMARK(BM_KernelNoInteraction)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
