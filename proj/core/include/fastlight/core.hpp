#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

// Everything in fastlight is dimensionless: frequencies in units of the
// Raman coherence decay rate gamma, times in 1/gamma, lengths in c/gamma.
// With gamma = c = 1 the probe wavenumber shift kappa and the two-photon
// detuning delta share the same unit.
namespace fastlight {

using cplx = std::complex<double>;

inline constexpr double kGamma = 1.0;
inline constexpr double kSpeedOfLight = 1.0;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-system failure while reading configs or writing results.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class ValidationErrc {
  NonPositiveLength,
  NegativeGain,
  UnnormalizedRabiVector,
  RejectedExtraneousField,
  MissingField,
};

std::string_view to_string(ValidationErrc code);

class ValidationError : public Error {
 public:
  ValidationError(ValidationErrc code, const std::string& detail);
  ValidationErrc code() const noexcept { return code_; }

 private:
  ValidationErrc code_;
};

/// Pump/probe configuration.
enum class Scheme {
  SingleProbeSinglePump,
  SingleProbeDoublet,
  TwoProbeSinglePumpPair,
  TwoProbeDoubleDoublet,
};

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

bool is_two_probe(Scheme scheme) noexcept;
bool is_doublet(Scheme scheme) noexcept;

/// Rabi amplitudes of the first pump doublet normalised by their total,
/// (Omega_{1,1}, Omega_{2,1}) / Omega_1.
struct RabiRatios {
  cplx r11{1.0, 0.0};
  cplx r21{0.0, 0.0};

  double norm() const;
};

struct SchemeParams {
  Scheme scheme = Scheme::SingleProbeDoublet;
  // Aggregate Raman gain strengths M = |Omega|^2 / (Delta0^2 L_dec).
  double gain_m1 = 0.0;
  double gain_m2 = 0.0;
  // Half the pump splitting; pumps sit at delta = -delta_cap and +delta_cap.
  double delta_cap = 0.0;
  std::optional<cplx> rabi_ratio_11;
  std::optional<cplx> rabi_ratio_21;
  double cloud_length = 1.0;

  /// Ratios of a two-probe scheme, or the decoupled (1, 0) pair otherwise.
  RabiRatios ratios() const;

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// Checks invariants and returns normalised parameters.
///
/// Rabi ratios within 1e-9 of unit norm are rescaled onto the unit sphere;
/// anything further off is rejected. Single-probe schemes must not carry
/// ratio fields. The result is a fixed point of validate().
SchemeParams validate(SchemeParams params);

inline constexpr double kRatioRescaleTolerance = 1e-9;

}  // namespace fastlight
