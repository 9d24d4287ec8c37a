#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastlight/core.hpp"
#include "fastlight/wavepacket.hpp"

namespace fastlight {

/// Malformed configuration text. Carries the offending key (may be empty for
/// syntax errors) and the 1-based line it was found on (0 when unknown).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, int line, const std::string& what);
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  std::vector<double> points() const;
};

/// Parses "MIN:MAX:COUNT". Requires MIN < MAX and COUNT >= 2.
GridSpec parse_grid_spec(std::string_view text);

/// Parses "t1,t2,...". Requires a non-empty sorted list.
std::vector<double> parse_snapshot_list(std::string_view text);

/// A propagation run: medium, incident packet and what to sample.
struct Scenario {
  std::string name;
  SchemeParams params;
  SpectralPacket packet{0.1, -75.0};
  std::vector<double> t_snapshots{0.0, 30.0, 60.0, 90.0};
  std::optional<GridSpec> z_grid;
};

// Config files are flat YAML mappings. The scheme keys are
//   scheme, gain_m1, gain_m2, delta_cap, rabi_ratio_11_re, rabi_ratio_11_im,
//   rabi_ratio_21_re, rabi_ratio_21_im, cloud_length
// and scenario files may add sigma, z0, snapshots (sequence) and
// z_grid ("MIN:MAX:COUNT"). Unknown keys are rejected.

/// Parses and validates scheme parameters; only scheme keys are accepted.
SchemeParams parse_scheme_config(std::string_view text);

/// Parses and validates a scenario.
Scenario parse_scenario_config(std::string_view text, std::string name = {});

Scenario load_scenario_file(const std::filesystem::path& path);

}  // namespace fastlight
