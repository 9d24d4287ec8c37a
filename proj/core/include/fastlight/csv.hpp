#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "fastlight/core.hpp"
#include "fastlight/dispersion.hpp"
#include "fastlight/steady_state.hpp"
#include "fastlight/wavepacket.hpp"

// CSV emitters. One header row, comma separated, every number printed with
// 17 significant digits so that files round-trip doubles exactly.
namespace fastlight::csv {

std::string number(double value);

/// delta, re_kappa, im_kappa, group_index, group_velocity, gain
void write_dispersion(std::ostream& os, std::span<const DispersionPoint> points);

/// z, t, re_e1, im_e1, abs_e1 and, for two-probe grids,
/// re_e2, im_e2, abs_e2, abs_psi, abs_phi.
void write_snapshot(std::ostream& os, const FieldGrid& grid, const RabiRatios& ratios,
                    bool header = true);

struct PeakRow {
  double t = 0.0;
  double z_peak_vacuum = 0.0;
  double z_peak_field1 = 0.0;
  std::optional<double> z_peak_field2;
  double advancement = 0.0;
  double gain_observed = 0.0;
  // Vacuum peak scaled by R (single probe) or 0.5 R (two probes).
  double vacuum_reference = 0.0;
};

/// t, z_peak_vacuum, z_peak_field1[, z_peak_field2], advancement, gain_observed,
/// vacuum_reference
void write_peaks(std::ostream& os, std::span<const PeakRow> rows, bool two_probe);

/// delta0, relative_error, relative_error_zero_probe
void write_oracle(std::ostream& os, std::span<const ConvergenceRow> rows);

}  // namespace fastlight::csv
