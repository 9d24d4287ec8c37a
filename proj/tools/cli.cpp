#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "bundled_scenarios.hpp"
#include "fastlight/csv.hpp"
#include "fastlight/dispersion.hpp"
#include "fastlight/steady_state.hpp"
#include "fastlight/wavepacket.hpp"

namespace fastlight::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  return file;
}

void finish(std::ofstream& file, const fs::path& path) {
  file.flush();
  if (!file) throw IoError("failed writing " + path.string());
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%g.csv", t);
  return buf;
}

void warn(std::ostream& err, const std::string& msg) { err << "warning: " << msg << '\n'; }

std::optional<Peak> try_peak(const FieldGrid& grid, Component which, std::ostream& err,
                             const char* label) {
  try {
    return locate_peak(grid, which);
  } catch (const PeakOnBoundary& e) {
    warn(err, std::string(label) + " at t = " + csv::number(grid.t) + ": " + e.what());
    return std::nullopt;
  }
}

}  // namespace

std::optional<Scenario> find_bundled_scenario(std::string_view name) {
  for (const auto& entry : bundled_scenarios()) {
    if (entry.name == name) return parse_scenario_config(entry.text, std::string(name));
  }
  return std::nullopt;
}

Scenario resolve_scenario(const std::optional<fs::path>& config,
                          const std::optional<std::string>& scenario) {
  if (config.has_value() == scenario.has_value()) {
    throw ConfigError({}, 0, "give exactly one of --config PATH or --scenario NAME");
  }
  if (config) return load_scenario_file(*config);
  if (auto found = find_bundled_scenario(*scenario)) return *found;
  std::string names;
  for (const auto& entry : bundled_scenarios()) {
    if (!names.empty()) names += ", ";
    names += entry.name;
  }
  throw ConfigError({}, 0, "unknown scenario '" + *scenario + "' (bundled: " + names + ")");
}

fs::path resolve_out_dir(const std::optional<fs::path>& out) {
  if (out) return *out;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return fs::current_path();
}

void cmd_dispersion(const DispersionRequest& req, std::ostream& out, std::ostream&) {
  const SchemeParams& params = req.scenario.params;
  DeltaGrid grid;
  if (req.delta_grid) grid = {req.delta_grid->min, req.delta_grid->max, req.delta_grid->count};
  const auto points = sweep(params, grid);

  prepare_dir(req.out_dir);
  const auto path = req.out_dir / "dispersion.csv";
  auto file = open_output(path);
  csv::write_dispersion(file, points);
  finish(file, path);

  const DispersionModel model(params);
  const auto gv = group_velocity_at(0.0, model);
  out << "scheme=" << to_string(params.scheme) << '\n'
      << "v_g=" << csv::number(gv.velocity) << (gv.divergent ? " (divergent)" : "") << '\n'
      << "group_index=" << csv::number(gv.group_index) << '\n'
      << "R=" << csv::number(transmission(model.kappa(0.0), params.cloud_length)) << '\n'
      << "regime=" << to_string(classify_regime(gv.group_index)) << '\n'
      << "wrote " << path.string() << '\n';
}

void cmd_propagate(const PropagateRequest& req, std::ostream& out, std::ostream& err) {
  const Scenario& sc = req.scenario;
  const SchemeParams& params = sc.params;
  const bool two = is_two_probe(params.scheme);
  for (const auto& w : sc.packet.warnings()) warn(err, w);

  const std::vector<double> z_axis = sc.z_grid ? sc.z_grid->points()
                                               : default_z_axis(sc.packet, sc.t_snapshots.back());
  QuadratureOptions quad;
  quad.fixed_nodes = req.nodes;

  const DispersionModel model(params);
  const double gain_r = transmission(model.kappa(0.0), params.cloud_length);
  const double reference_scale = two ? 0.5 * gain_r : gain_r;

  prepare_dir(req.out_dir);
  std::optional<std::ofstream> long_file;
  const auto long_path = req.out_dir / "snapshots.csv";
  if (req.long_format) long_file = open_output(long_path);

  std::vector<csv::PeakRow> rows;
  for (std::size_t k = 0; k < sc.t_snapshots.size(); ++k) {
    const double t = sc.t_snapshots[k];
    const FieldGrid grid = synthesize(z_axis, t, sc.packet, params, quad);
    const FieldGrid vac = vacuum_grid(z_axis, t, sc.packet);

    if (long_file) {
      csv::write_snapshot(*long_file, grid, params.ratios(), k == 0);
    } else {
      const auto path = req.out_dir / snapshot_name(t);
      auto file = open_output(path);
      csv::write_snapshot(file, grid, params.ratios());
      finish(file, path);
    }

    const double nan = std::nan("");
    csv::PeakRow row;
    row.t = t;
    const auto pv = try_peak(vac, Component::Field1, err, "vacuum peak");
    const auto p1 = try_peak(grid, Component::Field1, err, "field1 peak");
    row.z_peak_vacuum = pv ? pv->z : nan;
    row.z_peak_field1 = p1 ? p1->z : nan;
    if (two) {
      const auto p2 = try_peak(grid, Component::Field2, err, "field2 peak");
      row.z_peak_field2 = p2 ? p2->z : nan;
    }
    row.advancement = row.z_peak_field1 - row.z_peak_vacuum;
    row.gain_observed = (pv && p1) ? p1->magnitude / pv->magnitude : nan;
    row.vacuum_reference = pv ? reference_scale * pv->magnitude : nan;
    rows.push_back(row);

    out << "t=" << csv::number(t) << " nodes=" << grid.quadrature.nodes
        << " z_peak_vacuum=" << csv::number(row.z_peak_vacuum)
        << " z_peak_field1=" << csv::number(row.z_peak_field1);
    if (two) out << " z_peak_field2=" << csv::number(row.z_peak_field2.value_or(nan));
    out << " advancement=" << csv::number(row.advancement)
        << " gain_observed=" << csv::number(row.gain_observed) << '\n';
  }
  if (long_file) finish(*long_file, long_path);

  const auto peaks_path = req.out_dir / "peaks.csv";
  auto peaks = open_output(peaks_path);
  csv::write_peaks(peaks, rows, two);
  finish(peaks, peaks_path);
  out << "R=" << csv::number(gain_r) << " vacuum_scale=" << csv::number(reference_scale) << '\n'
      << "wrote " << peaks_path.string() << '\n';
}

void cmd_oracle(const OracleRequest& req, std::ostream& out, std::ostream& err) {
  ConvergenceStudy study;
  study.gain = req.gain;
  const auto rows = single_pump_convergence(study);

  prepare_dir(req.out_dir);
  const auto path = req.out_dir / "oracle_convergence.csv";
  auto file = open_output(path);
  csv::write_oracle(file, rows);
  finish(file, path);

  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << "delta0=" << csv::number(rows[i].delta0)
        << " relative_error=" << csv::number(rows[i].relative_error);
    if (i > 0) out << " ratio=" << csv::number(rows[i].relative_error / rows[i - 1].relative_error);
    out << '\n';
    if (!rows[i].adiabatic) warn(err, "adiabaticity ratio below threshold at delta0 = " + csv::number(rows[i].delta0));
  }
  out << "wrote " << path.string() << '\n';

  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].relative_error < rows[i - 1].relative_error)) {
      throw OracleCheckFailed("relative error did not decrease between delta0 = " +
                              csv::number(rows[i - 1].delta0) + " and " + csv::number(rows[i].delta0));
    }
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast-light pulse propagation in Raman gain media"};
  app.require_subcommand(1);

  std::optional<fs::path> config;
  std::optional<std::string> scenario;
  std::optional<fs::path> out_dir;
  std::optional<std::string> grid;
  std::optional<std::string> snapshots;
  std::optional<std::size_t> nodes;
  bool long_format = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Scheme/scenario YAML file");
    sub->add_option("--out", out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");
  };

  auto* disp = app.add_subcommand("dispersion", "Sweep kappa(delta), group velocity and gain");
  add_common(disp);
  disp->add_option("--scenario", scenario, "Bundled scenario name");
  disp->add_option("--grid", grid, "Detuning grid MIN:MAX:COUNT (default -5:5:2001)");

  auto* prop = app.add_subcommand("propagate", "Synthesize Gaussian packets through the cloud");
  add_common(prop);
  prop->add_option("--scenario", scenario, "Bundled scenario name (fig3, fig4, vacuum)");
  prop->add_option("--grid", grid, "z grid MIN:MAX:COUNT");
  prop->add_option("--snapshots", snapshots, "Comma separated snapshot times");
  prop->add_option("--nodes", nodes, "Fixed spectral quadrature node count")->check(CLI::PositiveNumber);
  prop->add_flag("--long", long_format, "Write one long-format snapshots.csv instead of one file per t");

  auto* oracle = app.add_subcommand("oracle", "Steady-state oracle convergence in Delta0");
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigFailure;
  }

  try {
    const fs::path dir = resolve_out_dir(out_dir);
    if (disp->parsed()) {
      DispersionRequest req{resolve_scenario(config, scenario), dir, std::nullopt};
      if (grid) req.delta_grid = parse_grid_spec(*grid);
      cmd_dispersion(req, out, err);
    } else if (prop->parsed()) {
      PropagateRequest req{resolve_scenario(config, scenario), dir, nodes, long_format};
      if (grid) req.scenario.z_grid = parse_grid_spec(*grid);
      if (snapshots) req.scenario.t_snapshots = parse_snapshot_list(*snapshots);
      cmd_propagate(req, out, err);
    } else if (oracle->parsed()) {
      OracleRequest req;
      req.out_dir = dir;
      if (config) req.gain = load_scenario_file(*config).params.gain_m1;
      cmd_oracle(req, out, err);
    }
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const QuadratureNotConverged& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const OracleCheckFailed& e) {
    err << "oracle check failed: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kSuccess;
}

}  // namespace fastlight::cli
