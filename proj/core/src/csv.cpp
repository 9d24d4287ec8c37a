#include "fastlight/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "fastlight/modes.hpp"

namespace fastlight::csv {

std::string number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_dispersion(std::ostream& os, std::span<const DispersionPoint> points) {
  os << "delta,re_kappa,im_kappa,group_index,group_velocity,gain\n";
  for (const auto& p : points) {
    os << number(p.delta) << ',' << number(p.kappa.real()) << ',' << number(p.kappa.imag()) << ','
       << number(p.group_index()) << ',' << number(p.group_velocity) << ','
       << number(p.amplitude_gain) << '\n';
  }
}

void write_snapshot(std::ostream& os, const FieldGrid& grid, const RabiRatios& ratios, bool header) {
  const bool two = grid.has_second();
  if (header) {
    os << "z,t,re_e1,im_e1,abs_e1";
    if (two) os << ",re_e2,im_e2,abs_e2,abs_psi,abs_phi";
    os << '\n';
  }
  for (std::size_t i = 0; i < grid.z.size(); ++i) {
    const cplx e1 = grid.field1[i];
    os << number(grid.z[i]) << ',' << number(grid.t) << ',' << number(e1.real()) << ','
       << number(e1.imag()) << ',' << number(std::abs(e1));
    if (two) {
      const cplx e2 = grid.field2[i];
      const auto modes = to_modes(e1, e2, ratios);
      os << ',' << number(e2.real()) << ',' << number(e2.imag()) << ',' << number(std::abs(e2))
         << ',' << number(std::abs(modes.psi)) << ',' << number(std::abs(modes.phi));
    }
    os << '\n';
  }
}

void write_peaks(std::ostream& os, std::span<const PeakRow> rows, bool two_probe) {
  os << "t,z_peak_vacuum,z_peak_field1";
  if (two_probe) os << ",z_peak_field2";
  os << ",advancement,gain_observed,vacuum_reference\n";
  for (const auto& r : rows) {
    os << number(r.t) << ',' << number(r.z_peak_vacuum) << ',' << number(r.z_peak_field1);
    if (two_probe) os << ',' << number(r.z_peak_field2.value_or(std::nan("")));
    os << ',' << number(r.advancement) << ',' << number(r.gain_observed) << ','
       << number(r.vacuum_reference) << '\n';
  }
}

void write_oracle(std::ostream& os, std::span<const ConvergenceRow> rows) {
  os << "delta0,relative_error,relative_error_zero_probe\n";
  for (const auto& r : rows) {
    os << number(r.delta0) << ',' << number(r.relative_error) << ','
       << number(r.relative_error_zero_probe) << '\n';
  }
}

}  // namespace fastlight::csv
