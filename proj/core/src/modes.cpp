#include "fastlight/modes.hpp"

#include <cmath>
#include <string>

#include "fastlight/dispersion.hpp"

namespace fastlight {

void require_unit_ratios(const RabiRatios& r) {
  const double n2 = std::norm(r.r11) + std::norm(r.r21);
  if (!(std::abs(n2 - 1.0) <= kRatioNormTolerance)) {
    throw ValidationError(ValidationErrc::UnnormalizedRabiVector,
                          "|r11|^2 + |r21|^2 = " + std::to_string(n2));
  }
}

Eigen::Matrix2cd mode_transform(const RabiRatios& r) {
  require_unit_ratios(r);
  Eigen::Matrix2cd u;
  u << std::conj(r.r11), std::conj(r.r21),
       r.r21, -r.r11;
  return u;
}

ModePair to_modes(cplx e1, cplx e2, const RabiRatios& r) {
  require_unit_ratios(r);
  return {std::conj(r.r11) * e1 + std::conj(r.r21) * e2, r.r21 * e1 - r.r11 * e2};
}

std::pair<cplx, cplx> from_modes(const ModePair& m, const RabiRatios& r) {
  require_unit_ratios(r);
  return {r.r11 * m.psi + std::conj(r.r21) * m.phi, r.r21 * m.psi - std::conj(r.r11) * m.phi};
}

Eigen::Matrix2cd coupling_matrix(double delta, const SchemeParams& params) {
  const RabiRatios r = params.ratios();
  require_unit_ratios(r);
  const DispersionModel model(params);

  // Rabi vectors of each resonance relative to Omega_1; the second doublet
  // shares the direction of the first and carries strength gain_m2.
  const Eigen::Vector2cd omega(r.r11, r.r21);
  Eigen::Matrix2cd k = Eigen::Matrix2cd::Zero();
  for (const auto& line : model.resonances()) {
    const cplx weight = line.strength / cplx(delta - line.center, kGamma);
    k += weight * (omega * omega.adjoint());
  }
  return k;
}

ModeSpectrum mode_spectrum(double delta, const SchemeParams& params) {
  const RabiRatios r = params.ratios();
  require_unit_ratios(r);
  ModeSpectrum s;
  s.coupled_eigenvalue = DispersionModel(params).kappa(delta);
  s.uncoupled_eigenvalue = 0.0;
  s.coupled_vector << r.r11, r.r21;
  s.uncoupled_vector << std::conj(r.r21), -std::conj(r.r11);
  return s;
}

}  // namespace fastlight
