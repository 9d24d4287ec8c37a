#pragma once

#include <Eigen/Dense>
#include <utility>

#include "fastlight/core.hpp"

namespace fastlight {

/// Coupled (psi) and uncoupled (phi) superpositions of the two probe envelopes.
struct ModePair {
  cplx psi;
  cplx phi;
};

inline constexpr double kRatioNormTolerance = 1e-12;

/// Throws ValidationError(UnnormalizedRabiVector) unless |r11|^2 + |r21|^2 = 1
/// within kRatioNormTolerance.
void require_unit_ratios(const RabiRatios& r);

/// The 2x2 unitary taking (E1, E2) to (psi, phi):
///   psi = conj(r11) E1 + conj(r21) E2,  phi = r21 E1 - r11 E2.
Eigen::Matrix2cd mode_transform(const RabiRatios& r);

ModePair to_modes(cplx e1, cplx e2, const RabiRatios& r);

/// Inverse of to_modes: E1 = r11 psi + conj(r21) phi, E2 = r21 psi - conj(r11) phi.
std::pair<cplx, cplx> from_modes(const ModePair& m, const RabiRatios& r);

/// Propagation matrix K of a two-probe scheme, d_z (E1, E2)^T = i K (E1, E2)^T.
///
/// Built term by term from the Rabi products over each resonance denominator;
/// under the equal-ratio condition of the two doublets it collapses to
/// kappa(delta) r r^dagger.
Eigen::Matrix2cd coupling_matrix(double delta, const SchemeParams& params);

/// Closed-form spectrum of K: eigenvalue kappa on (r11, r21), zero on the
/// uncoupled direction (conj(r21), -conj(r11)).
struct ModeSpectrum {
  cplx coupled_eigenvalue;
  cplx uncoupled_eigenvalue;
  Eigen::Vector2cd coupled_vector;
  Eigen::Vector2cd uncoupled_vector;
};

ModeSpectrum mode_spectrum(double delta, const SchemeParams& params);

}  // namespace fastlight
