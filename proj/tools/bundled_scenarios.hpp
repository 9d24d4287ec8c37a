#pragma once

#include <string_view>
#include <vector>

namespace fastlight::cli {

struct BundledScenario {
  std::string_view name;
  std::string_view text;
};

/// Generated at configure time from scenarios/*.yaml.
const std::vector<BundledScenario>& bundled_scenarios();

}  // namespace fastlight::cli
