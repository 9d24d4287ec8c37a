#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace fastlight;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fastlight");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("fastlight_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto path = dir / "scheme.yaml";
  std::ofstream(path) << text;
  return path;
}

const std::string kScenarioDir = FASTLIGHT_SCENARIO_DIR;

}  // namespace

TEST_CASE("bundled scenarios match the files in the repository") {
  for (const char* name : {"fig3", "fig4", "vacuum"}) {
    const auto bundled = cli::find_bundled_scenario(name);
    REQUIRE(bundled.has_value());
    const auto file = load_scenario_file(kScenarioDir + "/" + name + ".yaml");
    CHECK(bundled->params == file.params);
    CHECK(bundled->t_snapshots == file.t_snapshots);
    CHECK(bundled->packet.sigma == file.packet.sigma);
    CHECK(bundled->packet.z0 == file.packet.z0);
  }
  CHECK_FALSE(cli::find_bundled_scenario("fig5").has_value());
}

TEST_CASE("dispersion command reports v_g, R and regime") {
  const auto dir = scratch("dispersion");
  auto r = run({"dispersion", "--scenario", "fig3", "--out", dir.string()});
  REQUIRE(r.code == cli::kSuccess);
  CHECK_THAT(r.out, ContainsSubstring("v_g=1.3333"));
  CHECK_THAT(r.out, ContainsSubstring("R=148.413"));
  CHECK_THAT(r.out, ContainsSubstring("regime=Superluminal"));
  const auto rows = read_csv(dir / "dispersion.csv");
  REQUIRE(rows.size() == 2002);
  CHECK(rows[0] == std::vector<std::string>{"delta", "re_kappa", "im_kappa", "group_index",
                                            "group_velocity", "gain"});

  r = run({"dispersion", "--scenario", "vacuum", "--out", dir.string(), "--grid", "-1:1:3"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK_THAT(r.out, ContainsSubstring("v_g=1\n"));
  CHECK_THAT(r.out, ContainsSubstring("R=1\n"));
  CHECK_THAT(r.out, ContainsSubstring("regime=Subluminal"));
  CHECK(read_csv(dir / "dispersion.csv").size() == 4);

  const auto cfg = write_config(dir, "scheme: SingleProbeDoublet\ngain_m1: 5\ngain_m2: 5\n"
                                     "delta_cap: 1.7320508075688772\ncloud_length: 10\n");
  r = run({"dispersion", "--config", cfg.string(), "--out", dir.string()});
  REQUIRE(r.code == cli::kSuccess);
  CHECK_THAT(r.out, ContainsSubstring("regime=NegativeVg"));

  const auto critical = write_config(dir, "scheme: SingleProbeDoublet\ngain_m1: 4\ngain_m2: 4\n"
                                          "delta_cap: 1.7320508075688772\ncloud_length: 10\n");
  r = run({"dispersion", "--config", critical.string(), "--out", dir.string()});
  REQUIRE(r.code == cli::kSuccess);
  CHECK_THAT(r.out, ContainsSubstring("(divergent)"));
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes");
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == cli::kConfigFailure);
  CHECK(run({"dispersion", "--bogus"}).code == cli::kConfigFailure);
  CHECK(run({"dispersion", "--out", dir.string()}).code == cli::kConfigFailure);
  CHECK(run({"dispersion", "--scenario", "fig3", "--config", "x.yaml"}).code == cli::kConfigFailure);
  CHECK(run({"dispersion", "--scenario", "nope", "--out", dir.string()}).code == cli::kConfigFailure);
  CHECK(run({"dispersion", "--scenario", "fig3", "--grid", "5:1:3", "--out", dir.string()}).code ==
        cli::kConfigFailure);

  auto bad = write_config(dir, "scheme: SingleProbeDoublet\ncloud_length: 10\nfoo: 1\n");
  auto r = run({"dispersion", "--config", bad.string(), "--out", dir.string()});
  CHECK(r.code == cli::kConfigFailure);
  CHECK_THAT(r.err, ContainsSubstring("line 3"));
  CHECK_THAT(r.err, ContainsSubstring("foo"));

  bad = write_config(dir, "scheme: SingleProbeDoublet\ncloud_length: 0\n");
  CHECK(run({"dispersion", "--config", bad.string(), "--out", dir.string()}).code ==
        cli::kConfigFailure);

  CHECK(run({"dispersion", "--config", (dir / "missing.yaml").string(), "--out", dir.string()}).code ==
        cli::kIoFailure);

  // An existing regular file cannot serve as the output directory.
  const auto blocker = dir / "blocker";
  std::ofstream(blocker) << "x";
  CHECK(run({"dispersion", "--scenario", "fig3", "--out", blocker.string()}).code == cli::kIoFailure);

  // Gain exp(1000) overflows double precision.
  const auto wild = write_config(dir, "scheme: SingleProbeDoublet\ngain_m1: 1\ngain_m2: 1\n"
                                      "delta_cap: 1.7320508075688772\ncloud_length: 2000\n"
                                      "z0: -75\nsnapshots: [2100]\nz_grid: \"1900:2100:5\"\n");
  r = run({"propagate", "--config", wild.string(), "--out", dir.string()});
  CHECK(r.code == cli::kNumericFailure);
  CHECK_THAT(r.err, ContainsSubstring("non-finite"));
}

TEST_CASE("output directory falls back to the environment") {
  const auto dir = scratch("env");
  ::setenv(cli::kOutDirEnv, dir.string().c_str(), 1);
  const auto r = run({"dispersion", "--scenario", "fig3", "--grid", "-1:1:3"});
  ::unsetenv(cli::kOutDirEnv);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "dispersion.csv"));
  CHECK(cli::resolve_out_dir(fs::path("here")) == fs::path("here"));
}

TEST_CASE("propagate fig3") {
  const auto dir = scratch("fig3");
  const auto r = run({"propagate", "--scenario", "fig3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* t : {"0", "30", "60", "90"}) {
    const auto rows = read_csv(dir / (std::string("snapshot_t") + t + ".csv"));
    REQUIRE(rows.size() == 2002);
    CHECK(rows[0] == std::vector<std::string>{"z", "t", "re_e1", "im_e1", "abs_e1"});
    CHECK(rows[1][1] == t);
  }
  const auto peaks = read_csv(dir / "peaks.csv");
  REQUIRE(peaks.size() == 5);
  CHECK(peaks[0] == std::vector<std::string>{"t", "z_peak_vacuum", "z_peak_field1", "advancement",
                                             "gain_observed", "vacuum_reference"});
  const double advancement = std::stod(peaks[4][3]);
  CHECK(std::abs(advancement - 2.5) <= 0.05 * 2.5);
  const double vac_peak = std::stod(peaks[4][5]) / std::exp(5.0);
  CHECK(vac_peak == Catch::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(std::stod(peaks[4][4]) / std::exp(5.0) - 1.0) < 0.02);
}

TEST_CASE("propagate fig4") {
  const auto dir = scratch("fig4");
  const auto r = run({"propagate", "--scenario", "fig4", "--out", dir.string(), "--snapshots", "90"});
  REQUIRE(r.code == 0);
  const auto snap = read_csv(dir / "snapshot_t90.csv");
  CHECK(snap[0].size() == 10);
  CHECK(snap[0].back() == "abs_phi");
  const auto peaks = read_csv(dir / "peaks.csv");
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0][3] == "z_peak_field2");
  const double z1 = std::stod(peaks[1][2]);
  const double z2 = std::stod(peaks[1][3]);
  CHECK(std::abs(z1 - z2) < 0.5);
  CHECK(std::stod(peaks[1][6]) == Catch::Approx(0.5 * std::exp(5.0)).epsilon(1e-6));
}

TEST_CASE("propagate vacuum") {
  const auto dir = scratch("vacuum");
  const auto r = run({"propagate", "--scenario", "vacuum", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto peaks = read_csv(dir / "peaks.csv");
  const auto z = default_z_axis(SpectralPacket{0.1, -75.0}, 90.0);
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    CHECK(std::abs(std::stod(peaks[i][3])) < z[1] - z[0]);
    CHECK(std::stod(peaks[i][4]) == Catch::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("propagate is byte-for-byte reproducible") {
  const auto a = scratch("repro_a");
  const auto b = scratch("repro_b");
  const std::vector<std::string> common{"propagate", "--scenario", "fig4", "--grid", "-40:40:161",
                                        "--snapshots", "20,85"};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.string()});
  REQUIRE(run(args_a).code == 0);
  REQUIRE(run(args_b).code == 0);
  for (const char* f : {"snapshot_t20.csv", "snapshot_t85.csv", "peaks.csv"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("propagate options") {
  const auto dir = scratch("options");
  auto r = run({"propagate", "--scenario", "fig3", "--grid", "-100:50:301", "--snapshots", "10,70",
                "--long", "--nodes", "512", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("nodes=512"));
  CHECK_FALSE(fs::exists(dir / "snapshot_t10.csv"));
  const auto rows = read_csv(dir / "snapshots.csv");
  CHECK(rows.size() == 1 + 2 * 301);
  CHECK(rows[1][1] == "10");
  CHECK(rows.back()[1] == "70");

  CHECK(run({"propagate", "--scenario", "fig3", "--nodes", "0", "--out", dir.string()}).code ==
        cli::kConfigFailure);
  CHECK(run({"propagate", "--scenario", "fig3", "--snapshots", "9,1", "--out", dir.string()}).code ==
        cli::kConfigFailure);

  // A grid that cannot contain the packet reports missing peaks, not a crash.
  r = run({"propagate", "--scenario", "fig3", "--grid", "0:5:11", "--snapshots", "0", "--out",
           dir.string()});
  CHECK(r.code == 0);
  CHECK_THAT(r.err, ContainsSubstring("boundary"));
  CHECK(read_csv(dir / "peaks.csv")[1][1] == "nan");

  // Wide spectrum triggers a fidelity warning.
  const auto cfg = write_config(dir, "scheme: SingleProbeDoublet\ngain_m1: 1\ngain_m2: 1\n"
                                     "delta_cap: 1.7320508075688772\ncloud_length: 10\nsigma: 0.9\n"
                                     "z0: -20\nsnapshots: [0]\nz_grid: \"-40:0:81\"\n");
  r = run({"propagate", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK_THAT(r.err, ContainsSubstring("warning: sigma"));
}

TEST_CASE("oracle command") {
  const auto dir = scratch("oracle");
  const auto r = run({"oracle", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto rows = read_csv(dir / "oracle_convergence.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"delta0", "relative_error", "relative_error_zero_probe"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] == "0");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double ratio = std::stod(rows[i][1]) / std::stod(rows[i - 1][1]);
    CHECK(ratio > 0.05);
    CHECK(ratio < 0.2);
  }

  const auto cfg = write_config(dir, "scheme: SingleProbeSinglePump\ngain_m1: 2\ncloud_length: 1\n");
  CHECK(run({"oracle", "--config", cfg.string(), "--out", dir.string()}).code == 0);
}
