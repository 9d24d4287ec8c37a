#include "fastlight/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fastlight {

namespace {

constexpr std::array kSchemeKeys{
    "scheme",           "gain_m1",          "gain_m2",          "delta_cap",
    "rabi_ratio_11_re", "rabi_ratio_11_im", "rabi_ratio_21_re", "rabi_ratio_21_im",
    "cloud_length",
};
constexpr std::array kScenarioKeys{"sigma", "z0", "snapshots", "z_grid"};

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

double parse_double(std::string_view text, const std::string& what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && *(last - 1) == ' ') --last;
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError({}, 0, "cannot parse " + what + " from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    try {
      root_ = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
      throw ConfigError({}, e.mark.line + 1, "syntax error: " + e.msg);
    }
    if (root_.IsNull()) root_ = YAML::Node(YAML::NodeType::Map);
    if (!root_.IsMap()) {
      throw ConfigError({}, line_of(root_), "configuration must be a mapping of key: value pairs");
    }
  }

  void check_keys(bool allow_scenario) const {
    for (const auto& item : root_) {
      const auto key = item.first.as<std::string>();
      const bool known =
          std::find(kSchemeKeys.begin(), kSchemeKeys.end(), key) != kSchemeKeys.end() ||
          (allow_scenario &&
           std::find(kScenarioKeys.begin(), kScenarioKeys.end(), key) != kScenarioKeys.end());
      if (!known) throw ConfigError(key, line_of(item.first), "unknown key '" + key + "'");
    }
  }

  template <class T>
  std::optional<T> get(const std::string& key) const {
    const YAML::Node node = root_[key];
    if (!node) return std::nullopt;
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(key, line_of(node), "invalid value for '" + key + "'");
    }
  }

  int line(const std::string& key) const {
    const YAML::Node node = root_[key];
    return node ? line_of(node) : 0;
  }

 private:
  YAML::Node root_;
};

std::optional<cplx> read_ratio(const Reader& in, const std::string& stem) {
  auto re = in.get<double>(stem + "_re");
  auto im = in.get<double>(stem + "_im");
  if (!re && !im) return std::nullopt;
  return cplx{re.value_or(0.0), im.value_or(0.0)};
}

SchemeParams read_scheme(const Reader& in) {
  SchemeParams p;
  auto name = in.get<std::string>("scheme");
  if (!name) throw ConfigError("scheme", 0, "missing required key 'scheme'");
  auto scheme = parse_scheme(*name);
  if (!scheme) {
    throw ConfigError("scheme", in.line("scheme"), "unknown scheme '" + *name + "'");
  }
  p.scheme = *scheme;
  p.gain_m1 = in.get<double>("gain_m1").value_or(0.0);
  p.gain_m2 = in.get<double>("gain_m2").value_or(0.0);
  p.delta_cap = in.get<double>("delta_cap").value_or(0.0);
  p.rabi_ratio_11 = read_ratio(in, "rabi_ratio_11");
  p.rabi_ratio_21 = read_ratio(in, "rabi_ratio_21");
  if (auto length = in.get<double>("cloud_length")) {
    p.cloud_length = *length;
  } else {
    throw ConfigError("cloud_length", 0, "missing required key 'cloud_length'");
  }
  return validate(p);
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      key_(std::move(key)),
      line_(line) {}

std::vector<double> GridSpec::points() const {
  std::vector<double> out(count);
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = min + step * static_cast<double>(i);
  if (count > 0) out.back() = max;
  return out;
}

GridSpec parse_grid_spec(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw ConfigError({}, 0, "grid spec must be MIN:MAX:COUNT, got '" + std::string(text) + "'");
  }
  GridSpec g;
  g.min = parse_double(parts[0], "grid minimum");
  g.max = parse_double(parts[1], "grid maximum");
  const double count = parse_double(parts[2], "grid count");
  if (!(g.min < g.max) || !(count >= 2.0) || count != std::floor(count)) {
    throw ConfigError({}, 0, "grid spec needs MIN < MAX and an integer COUNT >= 2");
  }
  g.count = static_cast<std::size_t>(count);
  return g;
}

std::vector<double> parse_snapshot_list(std::string_view text) {
  std::vector<double> out;
  for (auto piece : split(text, ',')) out.push_back(parse_double(piece, "snapshot time"));
  if (out.empty() || !std::is_sorted(out.begin(), out.end())) {
    throw ConfigError("snapshots", 0, "snapshot times must be a non-empty sorted list");
  }
  return out;
}

SchemeParams parse_scheme_config(std::string_view text) {
  Reader in(text);
  in.check_keys(false);
  return read_scheme(in);
}

Scenario parse_scenario_config(std::string_view text, std::string name) {
  Reader in(text);
  in.check_keys(true);
  Scenario s;
  s.name = std::move(name);
  s.params = read_scheme(in);
  if (auto sigma = in.get<double>("sigma")) s.packet.sigma = *sigma;
  if (auto z0 = in.get<double>("z0")) s.packet.z0 = *z0;
  if (!(s.packet.sigma > 0.0)) throw ConfigError("sigma", in.line("sigma"), "sigma must be positive");
  if (auto snaps = in.get<std::vector<double>>("snapshots")) {
    if (snaps->empty() || !std::is_sorted(snaps->begin(), snaps->end())) {
      throw ConfigError("snapshots", in.line("snapshots"),
                        "snapshot times must be a non-empty sorted list");
    }
    s.t_snapshots = std::move(*snaps);
  }
  if (auto grid = in.get<std::string>("z_grid")) {
    try {
      s.z_grid = parse_grid_spec(*grid);
    } catch (const ConfigError& e) {
      throw ConfigError("z_grid", in.line("z_grid"), e.what());
    }
  }
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_scenario_config(buffer.str(), path.stem().string());
}

}  // namespace fastlight
