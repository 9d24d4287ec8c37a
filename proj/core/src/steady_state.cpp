#include "fastlight/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fastlight/dispersion.hpp"

namespace fastlight {

namespace {

constexpr cplx kI{0.0, 1.0};

double pump_amplitude(double gain, double coupling, double density, double delta0) {
  return std::abs(delta0) * std::sqrt(gain / (coupling * coupling * density));
}

}  // namespace

double MicroParams::aggregate_gain() const {
  return coupling * coupling * density * std::norm(rabi_pump) / (delta0 * delta0);
}

double adiabaticity_ratio(const MicroParams& micro, double delta) {
  const double x = micro.coupling * micro.coupling * std::norm(micro.probe);
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(micro.delta0) * std::abs(cplx(delta, -kGamma)) / x;
}

SinglePumpState solve_single_pump(const MicroParams& micro, double delta) {
  const double g = micro.coupling;
  const double phi_g = std::sqrt(micro.density);
  const cplx s_denom(delta, -kGamma);  // delta - i gamma
  const double x = g * g * std::norm(micro.probe);

  // Eliminating Phi_s from the excited-state equation leaves
  // (Delta0 - g^2|E|^2 / (delta - i)) Phi_e = Omega Phi_g.
  const cplx e_denom = micro.delta0 - x / s_denom;
  if (micro.delta0 * s_denom == cplx(x, 0.0) || e_denom == cplx{}) {
    throw SingularSystemError("Delta0 (delta - i) equals g^2 |E|^2");
  }

  SinglePumpState st;
  st.phi_e = micro.rabi_pump * phi_g / e_denom;
  st.phi_s = g * std::conj(micro.probe) * st.phi_e / s_denom;
  st.dE_dz = kI * g * std::conj(st.phi_s) * st.phi_e / kSpeedOfLight;
  st.adiabaticity = adiabaticity_ratio(micro, delta);
  st.adiabatic = st.adiabaticity > kAdiabaticityThreshold;
  return st;
}

DoubletState solve_doublet(const DoubletMicro& m, double delta) {
  const double g = m.coupling;
  const double phi_g = std::sqrt(m.density);
  DoubletState st;
  st.phi_s1 = g * m.rabi1 * phi_g * std::conj(m.probe) /
              (m.delta0 * cplx(delta + m.delta_cap, -kGamma));
  st.phi_s2 = g * m.rabi2 * phi_g * std::conj(m.probe) /
              (m.delta0 * cplx(delta - m.delta_cap, -kGamma));
  st.dE_dz = kI * g *
             (std::conj(st.phi_s1) * m.rabi1 / m.delta0 +
              std::conj(st.phi_s2) * m.rabi2 / m.delta0) *
             phi_g / kSpeedOfLight;
  return st;
}

DoubleDoubletState solve_double_doublet(const DoubleDoubletMicro& m, double delta, cplx e1,
                                        cplx e2) {
  const double g = m.coupling;
  const double phi_g = std::sqrt(m.density);
  const auto& w = m.rabi;
  DoubleDoubletState st;
  st.phi_s1 = g * phi_g / (cplx(delta + m.delta_cap, -kGamma) * m.delta0) *
              (w[0][0] * std::conj(e1) + w[1][0] * std::conj(e2));
  st.phi_s2 = g * phi_g / (cplx(delta - m.delta_cap, -kGamma) * m.delta0) *
              (w[0][1] * std::conj(e1) + w[1][1] * std::conj(e2));
  const cplx a1 = std::conj(st.phi_s1);
  const cplx a2 = std::conj(st.phi_s2);
  const double pre = g * phi_g / (m.delta0 * kSpeedOfLight);
  st.dE1_dz = kI * pre * (a1 * w[0][0] + a2 * w[0][1]);
  st.dE2_dz = kI * pre * (a1 * w[1][0] + a2 * w[1][1]);
  return st;
}

bool satisfies_ratio_condition(const DoubleDoubletMicro& m) {
  const cplx lhs = m.rabi[0][1] * m.rabi[1][0];
  const cplx rhs = m.rabi[1][1] * m.rabi[0][0];
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
  return std::abs(lhs - rhs) <= 1e-12 * scale;
}

DoubletMicro doublet_micro(const SchemeParams& params, double coupling, double density,
                           double delta0, cplx probe) {
  DoubletMicro m;
  m.coupling = coupling;
  m.density = density;
  m.delta0 = delta0;
  m.delta_cap = params.delta_cap;
  m.rabi1 = pump_amplitude(params.gain_m1, coupling, density, delta0);
  m.rabi2 = pump_amplitude(params.gain_m2, coupling, density, delta0);
  m.probe = probe;
  return m;
}

DoubleDoubletMicro double_doublet_micro(const SchemeParams& params, double coupling,
                                        double density, double delta0) {
  const RabiRatios r = params.ratios();
  const double omega1 = pump_amplitude(params.gain_m1, coupling, density, delta0);
  const double omega2 = pump_amplitude(params.gain_m2, coupling, density, delta0);
  DoubleDoubletMicro m;
  m.coupling = coupling;
  m.density = density;
  m.delta0 = delta0;
  m.delta_cap = params.delta_cap;
  m.rabi = {{{r.r11 * omega1, r.r11 * omega2}, {r.r21 * omega1, r.r21 * omega2}}};
  return m;
}

double growth_rate_error(cplx dE_dz, cplx kappa, cplx probe) {
  const cplx expected = kI * kappa * probe;
  const double diff = std::abs(dE_dz - expected);
  const double scale = std::abs(expected);
  return scale > 0.0 ? diff / scale : diff;
}

std::vector<ConvergenceRow> single_pump_convergence(const ConvergenceStudy& study) {
  std::vector<double> deltas = study.deltas;
  if (deltas.empty()) {
    for (int i = 0; i <= 20; ++i) deltas.push_back(-5.0 + 0.5 * i);
  }

  std::vector<ConvergenceRow> rows;
  for (double delta0 : study.delta0s) {
    MicroParams micro;
    micro.coupling = study.coupling;
    micro.density = study.density;
    micro.delta0 = delta0;
    micro.rabi_pump = pump_amplitude(study.gain, study.coupling, study.density, delta0);

    ConvergenceRow row;
    row.delta0 = delta0;
    for (double delta : deltas) {
      const cplx kappa = kappa_single_pump(delta, study.gain);

      micro.probe = study.probe;
      const auto st = solve_single_pump(micro, delta);
      row.relative_error = std::max(row.relative_error, growth_rate_error(st.dE_dz, kappa, micro.probe));
      row.adiabatic = row.adiabatic && st.adiabatic;

      micro.probe = 0.0;
      const auto st0 = solve_single_pump(micro, delta);
      row.relative_error_zero_probe =
          std::max(row.relative_error_zero_probe, growth_rate_error(st0.dE_dz, kappa, micro.probe));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fastlight
