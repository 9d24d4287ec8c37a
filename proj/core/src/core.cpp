#include "fastlight/core.hpp"

#include <cmath>
#include <limits>

namespace fastlight {

namespace {

std::string describe(ValidationErrc code, const std::string& detail) {
  std::string msg(to_string(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

// Below this the ratio vector is treated as already normalised, which keeps
// validate() idempotent bit for bit.
constexpr double kUnitSnap = 8.0 * std::numeric_limits<double>::epsilon();

}  // namespace

std::string_view to_string(ValidationErrc code) {
  switch (code) {
    case ValidationErrc::NonPositiveLength: return "NonPositiveLength";
    case ValidationErrc::NegativeGain: return "NegativeGain";
    case ValidationErrc::UnnormalizedRabiVector: return "UnnormalizedRabiVector";
    case ValidationErrc::RejectedExtraneousField: return "RejectedExtraneousField";
    case ValidationErrc::MissingField: return "MissingField";
  }
  return "Unknown";
}

ValidationError::ValidationError(ValidationErrc code, const std::string& detail)
    : Error(describe(code, detail)), code_(code) {}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::SingleProbeSinglePump: return "SingleProbeSinglePump";
    case Scheme::SingleProbeDoublet: return "SingleProbeDoublet";
    case Scheme::TwoProbeSinglePumpPair: return "TwoProbeSinglePumpPair";
    case Scheme::TwoProbeDoubleDoublet: return "TwoProbeDoubleDoublet";
  }
  return "Unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (auto s : {Scheme::SingleProbeSinglePump, Scheme::SingleProbeDoublet,
                 Scheme::TwoProbeSinglePumpPair, Scheme::TwoProbeDoubleDoublet}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool is_two_probe(Scheme scheme) noexcept {
  return scheme == Scheme::TwoProbeSinglePumpPair || scheme == Scheme::TwoProbeDoubleDoublet;
}

bool is_doublet(Scheme scheme) noexcept {
  return scheme == Scheme::SingleProbeDoublet || scheme == Scheme::TwoProbeDoubleDoublet;
}

double RabiRatios::norm() const { return std::hypot(std::abs(r11), std::abs(r21)); }

RabiRatios SchemeParams::ratios() const {
  if (!is_two_probe(scheme)) return {};
  return {rabi_ratio_11.value_or(cplx{}), rabi_ratio_21.value_or(cplx{})};
}

SchemeParams validate(SchemeParams params) {
  // Negated comparisons so that NaN is rejected too.
  if (!(params.cloud_length > 0.0) || !std::isfinite(params.cloud_length)) {
    throw ValidationError(ValidationErrc::NonPositiveLength,
                          "cloud_length must be positive, got " + std::to_string(params.cloud_length));
  }
  if (!(params.gain_m1 >= 0.0) || !(params.gain_m2 >= 0.0)) {
    throw ValidationError(ValidationErrc::NegativeGain, "gain_m1 and gain_m2 must be >= 0");
  }
  if (!(params.delta_cap >= 0.0)) {
    throw ValidationError(ValidationErrc::NegativeGain, "delta_cap must be >= 0");
  }

  const bool has_ratio = params.rabi_ratio_11.has_value() || params.rabi_ratio_21.has_value();
  if (!is_two_probe(params.scheme)) {
    if (has_ratio) {
      throw ValidationError(ValidationErrc::RejectedExtraneousField,
                            "rabi ratios are meaningless for scheme " +
                                std::string(to_string(params.scheme)));
    }
    return params;
  }

  if (!params.rabi_ratio_11 || !params.rabi_ratio_21) {
    throw ValidationError(ValidationErrc::MissingField,
                          "two-probe schemes need both rabi_ratio_11 and rabi_ratio_21");
  }
  const double norm = params.ratios().norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kRatioRescaleTolerance) {
    throw ValidationError(ValidationErrc::UnnormalizedRabiVector,
                          "|r11|^2 + |r21|^2 must be 1, norm is " + std::to_string(norm));
  }
  if (std::abs(norm - 1.0) > kUnitSnap) {
    *params.rabi_ratio_11 /= norm;
    *params.rabi_ratio_21 /= norm;
  }
  return params;
}

}  // namespace fastlight
