#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "fastlight/core.hpp"

namespace fastlight {

/// One Raman gain line contributing strength / (delta - center + i) to kappa.
struct Resonance {
  double strength = 0.0;
  double center = 0.0;
};

/// kappa = gain / (delta + i) for a single pump.
cplx kappa_single_pump(double delta, double gain);

/// kappa = m1 / (delta + Delta + i) + m2 / (delta - Delta + i) for a pump doublet.
cplx kappa_doublet(double delta, double m1, double m2, double delta_cap);

/// Coupled-mode kappa of the double Raman doublet. Same form as the single
/// doublet with the total strengths of each doublet.
cplx kappa_double_doublet(double delta, const SchemeParams& params);

/// Closed-form dispersion of a scheme, written as a sum of Raman resonances.
/// For two-probe schemes this is the wavenumber shift of the coupled mode psi.
class DispersionModel {
 public:
  DispersionModel() = default;
  explicit DispersionModel(const SchemeParams& params);

  static DispersionModel single_pump(double gain);
  static DispersionModel doublet(double m1, double m2, double delta_cap);

  cplx kappa(double delta) const;

  /// n-th derivative d^n kappa / d delta^n, exact.
  cplx derivative(double delta, int order) const;

  const std::vector<Resonance>& resonances() const noexcept { return lines_; }

 private:
  enum class Form { Single, Doublet };
  Form form_ = Form::Single;
  std::vector<Resonance> lines_;
};

struct GroupVelocity {
  double group_index = 1.0;  // 1 + d Re kappa / d delta
  double velocity = 1.0;     // +inf when divergent
  bool divergent = false;
};

inline constexpr double kDivergenceThreshold = 1e-12;
inline constexpr double kFiniteDifferenceStep = 1e-6;

GroupVelocity group_velocity_from_slope(double slope);

/// Group velocity from the closed-form derivative.
GroupVelocity group_velocity_at(double delta, const DispersionModel& model);

/// Group velocity of an arbitrary kappa(delta) by centred difference with
/// step kFiniteDifferenceStep.
GroupVelocity group_velocity_at(double delta, const std::function<cplx(double)>& kappa_fn);

/// Amplitude transmission |exp(i kappa L)| = exp(-Im(kappa) L).
double transmission(cplx kappa0, double cloud_length);

struct TaylorCoefficients {
  cplx k0;  // kappa(0)
  cplx k1;  // kappa'(0)
  cplx k2;  // kappa''(0)
};

/// Expansion of the equal-strength doublet (m1 = m2 = m) about delta = 0.
TaylorCoefficients taylor_coefficients(double m, double delta_cap);

/// Expansion of any scheme about `delta` from the exact derivatives.
TaylorCoefficients taylor_coefficients(const DispersionModel& model, double delta = 0.0);

enum class Regime { Subluminal, Superluminal, NegativeVg };

std::string_view to_string(Regime regime);

/// Subluminal for n_g >= 1, Superluminal for 0 <= n_g < 1, NegativeVg below 0.
Regime classify_regime(double group_index);

struct DispersionPoint {
  double delta = 0.0;
  cplx kappa;
  double group_index_excess = 0.0;
  double group_velocity = 1.0;
  double amplitude_gain = 1.0;
  bool divergent = false;

  double group_index() const { return 1.0 + group_index_excess; }
};

DispersionPoint evaluate(const DispersionModel& model, double delta, double cloud_length);

struct DeltaGrid {
  double min = -5.0;
  double max = 5.0;
  std::size_t count = 2001;
};

std::vector<DispersionPoint> sweep(const SchemeParams& params, const DeltaGrid& grid = {});

}  // namespace fastlight
