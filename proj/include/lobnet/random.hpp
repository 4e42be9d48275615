#pragma once
#include <cstdint>
#include <random>

namespace lobnet {

// Stream ids for seed derivation. One master seed per realization fans out into
// independent engines so that spreading draws never perturb source draws.
namespace stream {
inline constexpr std::uint64_t network = 0;
inline constexpr std::uint64_t spreading = 1;
inline constexpr std::uint64_t agent_base = 1024;
} // namespace stream

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) noexcept;

// Thin wrapper over mt19937_64. The variate transforms are written out here
// instead of using <random> distributions, whose output is implementation
// defined, so logs are reproducible across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Index in [0, n); consumes exactly one engine draw.
  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

  double exponential(double mean);
  double standard_normal();

private:
  std::mt19937_64 engine_;
  double spare_{0.0};
  bool has_spare_{false};
};

} // namespace lobnet
