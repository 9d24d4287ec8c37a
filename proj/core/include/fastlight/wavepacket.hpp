#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fastlight/core.hpp"
#include "fastlight/dispersion.hpp"

namespace fastlight {

/// Incident Gaussian packet: spectrum exp(-delta^2/sigma^2 - i delta z0) / (sqrt(pi) sigma),
/// which in vacuum is exp(-sigma^2 (z - z0 - t)^2 / 4) with unit peak.
struct SpectralPacket {
  double sigma = 0.1;
  double z0 = -75.0;

  /// Width in coordinate space, 2 / sigma.
  double spatial_width() const { return 2.0 / sigma; }

  /// Human-readable fidelity warnings (wide spectrum, tail already inside the cloud).
  std::vector<std::string> warnings() const;
};

inline constexpr double kMaxFaithfulSigma = 0.8;
inline constexpr double kTailClearance = 3.0;     // |z0| >= 3 sigma_z
inline constexpr double kSpectralHalfWidth = 8.0;  // integrate over +-8 sigma

cplx gaussian_amplitude(double delta, const SpectralPacket& packet);

/// Closed-form vacuum packet.
cplx vacuum_field(double z, double t, const SpectralPacket& packet);

/// Unit-amplitude monochromatic probe at detuning delta for a single-probe scheme:
/// free plane wave before the cloud, exp(i(delta + kappa) z - i delta t) inside,
/// and the exit amplitude carried on at c beyond z = L.
cplx monochromatic_single(double delta, double z, double t, const SchemeParams& params);

/// Both probe fields for a two-probe scheme when only probe 1 is incident.
std::pair<cplx, cplx> monochromatic_double(double delta, double z, double t,
                                           const SchemeParams& params);

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

struct QuadratureOptions {
  std::size_t initial_nodes = 256;
  std::size_t max_nodes = std::size_t{1} << 16;
  // Accepted when doubling the node count moves no sample by more than
  // tolerance * max(1, largest |field| on the grid).
  double tolerance = 1e-10;
  // Use exactly this many nodes (rounded up to a whole panel) with no doubling check.
  std::optional<std::size_t> fixed_nodes;
};

struct QuadratureRecord {
  std::size_t nodes = 0;
  double half_width = 0.0;
  double last_change = std::numeric_limits<double>::quiet_NaN();  // NaN when fixed
  bool checked = false;
};

struct FieldGrid {
  std::vector<double> z;
  double t = 0.0;
  std::vector<cplx> field1;
  std::vector<cplx> field2;  // empty for single-probe schemes
  Scheme scheme = Scheme::SingleProbeDoublet;
  SpectralPacket packet;
  QuadratureRecord quadrature;

  bool has_second() const noexcept { return !field2.empty(); }
};

/// Superposes monochromatic solutions weighted by the packet spectrum over
/// |delta| <= 8 sigma with a composite Gauss-Legendre rule, doubling the node
/// count until converged. Throws QuadratureNotConverged past max_nodes.
FieldGrid synthesize(std::span<const double> z_axis, double t, const SpectralPacket& packet,
                     const SchemeParams& params, const QuadratureOptions& options = {});

/// Closed-form vacuum packet sampled like synthesize().
FieldGrid vacuum_grid(std::span<const double> z_axis, double t, const SpectralPacket& packet);

/// Default sampling: 2001 points on [z0 - 5 sigma_z, z0 + t_max + 5 sigma_z].
std::vector<double> default_z_axis(const SpectralPacket& packet, double t_max,
                                   std::size_t count = 2001);

// Second-order (Taylor) envelopes for a narrow spectrum. The complex width
// factor 1 - (i/2) kappa''(0) sigma^2 z must keep a positive real part;
// otherwise std::domain_error is thrown.

cplx analytic_inside(double z, double t, const SpectralPacket& packet,
                     const TaylorCoefficients& taylor);

cplx analytic_outside(double z, double t, const SpectralPacket& packet,
                      const TaylorCoefficients& taylor, double cloud_length);

/// Vacuum packet, analytic_inside or analytic_outside depending on z.
cplx analytic_single(double z, double t, const SpectralPacket& packet,
                     const TaylorCoefficients& taylor, double cloud_length);

/// Both probe fields as weighted mixes of the vacuum and single-doublet envelopes.
std::pair<cplx, cplx> analytic_double(double z, double t, const SpectralPacket& packet,
                                      const SchemeParams& params);

enum class Component { Field1, Field2 };

struct Peak {
  double z = 0.0;
  double magnitude = 0.0;
  std::size_t index = 0;
};

class PeakOnBoundary : public Error {
 public:
  using Error::Error;
};

/// Largest |f| refined by a parabola through |f|^2 at the neighbouring samples.
Peak locate_peak(std::span<const double> z, std::span<const cplx> field);

/// Peak of one component restricted to z >= z_from.
Peak locate_peak(const FieldGrid& grid, Component which,
                 double z_from = -std::numeric_limits<double>::infinity());

}  // namespace fastlight
