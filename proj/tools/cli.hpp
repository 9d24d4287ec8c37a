#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fastlight/config.hpp"

namespace fastlight::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigFailure = 1,
  kNumericFailure = 2,
  kIoFailure = 3,
};

/// Environment variable consulted when --out is not given.
inline constexpr const char* kOutDirEnv = "FASTLIGHT_OUT_DIR";

std::optional<Scenario> find_bundled_scenario(std::string_view name);

/// Resolves --config / --scenario into a scenario; exactly one must be set.
Scenario resolve_scenario(const std::optional<std::filesystem::path>& config,
                          const std::optional<std::string>& scenario);

/// --out if given, else $FASTLIGHT_OUT_DIR, else the working directory.
std::filesystem::path resolve_out_dir(const std::optional<std::filesystem::path>& out);

struct DispersionRequest {
  Scenario scenario;
  std::filesystem::path out_dir;
  std::optional<GridSpec> delta_grid;
};

struct PropagateRequest {
  Scenario scenario;
  std::filesystem::path out_dir;
  std::optional<std::size_t> nodes;
  bool long_format = false;
};

struct OracleRequest {
  double gain = 1.0;
  std::filesystem::path out_dir;
};

// Each command writes its CSV files under out_dir, prints a summary on `out`
// and throws on failure; run() maps exceptions to exit codes.
void cmd_dispersion(const DispersionRequest& req, std::ostream& out, std::ostream& err);
void cmd_propagate(const PropagateRequest& req, std::ostream& out, std::ostream& err);
void cmd_oracle(const OracleRequest& req, std::ostream& out, std::ostream& err);

/// Raised by cmd_oracle when the convergence study does not decrease.
class OracleCheckFailed : public Error {
 public:
  using Error::Error;
};

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fastlight::cli
