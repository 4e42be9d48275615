#pragma once
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "lobnet/kernel.hpp"
#include "lobnet/types.hpp"

namespace lobnet {

struct StatsOptions {
  double delta{10.0};  // mid-price sampling interval, time units
  std::size_t return_max_lag{500};
  std::size_t sign_max_lag{300};
  double return_hist_max{0.1};  // linear bins over [-max, max]
  std::size_t return_hist_bins{200};
  int waiting_bins_per_decade{10};
  int waiting_min_decade{-4};
  int waiting_max_decade{5};
  std::size_t sign_fit_min{1};
  std::size_t sign_fit_max{50};
  std::size_t abs_fit_min{1};
  std::size_t abs_fit_max{50};

  void validate() const;
  bool operator==(const StatsOptions&) const = default;
};

struct RunConfig {
  std::string name;  // defaults to the network kind
  SimConfig sim{};   // sim.seed is the base seed; realization r uses seed + r
  std::size_t realizations{5};
  StatsOptions stats{};
  std::filesystem::path output_dir{"results"};
  std::size_t jobs{1};
  bool write_logs{true};

  std::uint64_t seed_for(std::size_t realization) const { return sim.seed + realization; }
  void validate() const;
};

class ConfigParseError : public Error {
public:
  using Error::Error;
};

class ConfigValidationError : public Error {
public:
  using Error::Error;
};

/// Flat `key = value` document; `#` starts a comment. Unknown keys are errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Every key that affects outputs, with its effective value. output_dir and jobs
/// are left out so the echo is identical wherever and however a run executes.
std::string to_config_text(const RunConfig& config);

} // namespace lobnet
