#pragma once

#include <array>
#include <vector>

#include "fastlight/core.hpp"

// Monochromatic steady states of the atomic amplitudes. The single-pump
// solver keeps the excited-state amplitude exactly (no adiabatic
// elimination), so comparing its growth rate with the closed-form kappa
// measures the elimination error. The doublet solvers evaluate the
// post-elimination amplitude equations literally.
namespace fastlight {

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Microscopic parameters, dimensionless (gamma = c = 1).
struct MicroParams {
  double coupling = 1.0;  // g
  double density = 1.0;   // n; the ground amplitude is sqrt(n)
  double delta0 = 1e3;    // one-photon detuning
  cplx rabi_pump{1.0, 0.0};
  cplx probe{0.0, 0.0};

  /// g^2 n |Omega|^2 / Delta0^2, the single-pump gain entering kappa.
  double aggregate_gain() const;
};

inline constexpr double kAdiabaticityThreshold = 100.0;

/// |Delta0| |delta - i| / (g^2 |E|^2); infinite for a vanishing probe.
double adiabaticity_ratio(const MicroParams& micro, double delta);

struct SinglePumpState {
  cplx phi_e;
  cplx phi_s;
  cplx dE_dz;
  double adiabaticity = 0.0;
  bool adiabatic = true;  // adiabaticity > kAdiabaticityThreshold
};

/// Exact solution of the three stationary equations with fixed ground amplitude.
/// Throws SingularSystemError when Delta0 (delta - i) = g^2 |E|^2.
SinglePumpState solve_single_pump(const MicroParams& micro, double delta);

/// Single probe, two pumps at -Delta and +Delta.
struct DoubletMicro {
  double coupling = 1.0;
  double density = 1.0;
  double delta0 = 1e3;
  double delta_cap = 0.0;
  cplx rabi1{1.0, 0.0};
  cplx rabi2{1.0, 0.0};
  cplx probe{1.0, 0.0};
};

struct DoubletState {
  cplx phi_s1;
  cplx phi_s2;
  cplx dE_dz;
};

DoubletState solve_doublet(const DoubletMicro& micro, double delta);

/// Two probes, four pumps. rabi[i][j] is Omega_{i+1,j+1}: probe i, doublet j.
struct DoubleDoubletMicro {
  double coupling = 1.0;
  double density = 1.0;
  double delta0 = 1e3;
  double delta_cap = 0.0;
  std::array<std::array<cplx, 2>, 2> rabi{};
};

struct DoubleDoubletState {
  cplx phi_s1;
  cplx phi_s2;
  cplx dE1_dz;
  cplx dE2_dz;
};

DoubleDoubletState solve_double_doublet(const DoubleDoubletMicro& micro, double delta, cplx e1,
                                        cplx e2);

/// Omega_{1,2} Omega_{2,1} = Omega_{2,2} Omega_{1,1}, relative tolerance 1e-12.
bool satisfies_ratio_condition(const DoubleDoubletMicro& micro);

// Microscopic realisations of aggregate parameters. The pump amplitudes are
// chosen so that g^2 n |Omega_j|^2 / Delta0^2 reproduces gain_m1 / gain_m2.
DoubletMicro doublet_micro(const SchemeParams& params, double coupling, double density,
                           double delta0, cplx probe);
DoubleDoubletMicro double_doublet_micro(const SchemeParams& params, double coupling,
                                        double density, double delta0);

/// |dE/dz - i kappa E| / |i kappa E|; zero when both sides vanish.
double growth_rate_error(cplx dE_dz, cplx kappa, cplx probe);

struct ConvergenceStudy {
  double gain = 1.0;
  double coupling = 1.0;
  double density = 1.0;
  double probe = 0.5;
  std::vector<double> delta0s{1e2, 1e3, 1e4};
  std::vector<double> deltas;  // defaults to 21 points on [-5, 5]
};

struct ConvergenceRow {
  double delta0 = 0.0;
  double relative_error = 0.0;              // max over the delta grid
  double relative_error_zero_probe = 0.0;   // same with E = 0
  bool adiabatic = true;
};

/// Exact single-pump growth rate against kappa = G / (delta + i) at fixed G
/// for each Delta0. Pump amplitude scales with Delta0 to hold G fixed.
std::vector<ConvergenceRow> single_pump_convergence(const ConvergenceStudy& study);

}  // namespace fastlight
