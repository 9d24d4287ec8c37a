#include "fastlight/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fastlight/quadrature.hpp"

namespace fastlight {

namespace {

constexpr cplx kI{0.0, 1.0};

// Shared by the public monochromatic functions and the synthesis kernel so
// both evaluate identical expressions.
// The free carrier is factored out so the branches differ only in the medium
// factor exp(i kappa min(z, L)), which keeps them continuous to rounding.
cplx mono_single(double delta, cplx kappa, double z, double t, double length) {
  const cplx carrier = std::exp(kI * delta * (z - t));
  if (z <= 0.0) return carrier;
  return std::exp(kI * kappa * std::min(z, length)) * carrier;
}

std::pair<cplx, cplx> mono_double(double delta, cplx kappa, double z, double t, double length,
                                  const RabiRatios& r) {
  const cplx carrier = std::exp(kI * delta * (z - t));
  if (z <= 0.0) return {carrier, cplx{}};
  const cplx grown = std::exp(kI * kappa * std::min(z, length)) - 1.0;
  return {(1.0 + std::norm(r.r11) * grown) * carrier,
          r.r21 * std::conj(r.r11) * grown * carrier};
}

struct Kernel {
  std::vector<double> delta;
  std::vector<cplx> amplitude;  // weight * spectrum
  std::vector<cplx> kappa;
};

Kernel make_kernel(const SpectralPacket& packet, const SchemeParams& params, std::size_t nodes) {
  const double half = kSpectralHalfWidth * packet.sigma;
  const std::size_t panels = (nodes + kGaussOrder - 1) / kGaussOrder;
  const auto rule = composite_gauss_legendre(-half, half, panels);
  const DispersionModel model(params);
  Kernel k;
  k.delta = rule.nodes;
  k.amplitude.resize(rule.size());
  k.kappa.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    k.amplitude[i] = rule.weights[i] * gaussian_amplitude(rule.nodes[i], packet);
    k.kappa[i] = model.kappa(rule.nodes[i]);
  }
  return k;
}

void integrate(const Kernel& k, std::span<const double> z_axis, double t,
               const SchemeParams& params, FieldGrid& out) {
  const bool two = is_two_probe(params.scheme);
  const RabiRatios r = params.ratios();
  const double length = params.cloud_length;
  out.field1.assign(z_axis.size(), cplx{});
  out.field2.assign(two ? z_axis.size() : 0, cplx{});
  for (std::size_t j = 0; j < z_axis.size(); ++j) {
    const double z = z_axis[j];
    cplx s1{};
    cplx s2{};
    for (std::size_t i = 0; i < k.delta.size(); ++i) {
      if (two) {
        const auto [a, b] = mono_double(k.delta[i], k.kappa[i], z, t, length, r);
        s1 += k.amplitude[i] * a;
        s2 += k.amplitude[i] * b;
      } else {
        s1 += k.amplitude[i] * mono_single(k.delta[i], k.kappa[i], z, t, length);
      }
    }
    out.field1[j] = s1;
    if (two) out.field2[j] = s2;
  }
}

// NaN wins, so overflowed fields cannot pass the convergence test.
double nan_max(double m, double x) { return (x > m || std::isnan(x)) && !std::isnan(m) ? x : m; }

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = nan_max(m, std::abs(x));
  return m;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = nan_max(m, std::abs(a[i] - b[i]));
  return m;
}

cplx width_factor(const SpectralPacket& packet, const TaylorCoefficients& taylor, double z) {
  const cplx q = 1.0 - 0.5 * kI * taylor.k2 * packet.sigma * packet.sigma * z;
  if (!(q.real() > 0.0)) {
    throw std::domain_error("Taylor envelope width factor left the right half-plane");
  }
  return q;
}

cplx taylor_envelope(cplx drift, cplx q, cplx gain_phase, const SpectralPacket& packet) {
  const double s2 = packet.sigma * packet.sigma;
  return std::exp(-s2 * drift * drift / (4.0 * q) + gain_phase) / std::sqrt(q);
}

}  // namespace

std::vector<std::string> SpectralPacket::warnings() const {
  std::vector<std::string> out;
  if (!(sigma < kMaxFaithfulSigma)) {
    std::ostringstream os;
    os << "sigma = " << sigma << " reaches past the linear part of the dispersion (keep sigma < "
       << kMaxFaithfulSigma << ")";
    out.push_back(os.str());
  }
  if (std::abs(z0) < kTailClearance * spatial_width()) {
    std::ostringstream os;
    os << "|z0| = " << std::abs(z0) << " is less than " << kTailClearance
       << " packet widths; the incident tail already overlaps the cloud";
    out.push_back(os.str());
  }
  return out;
}

cplx gaussian_amplitude(double delta, const SpectralPacket& packet) {
  const double s = packet.sigma;
  return std::exp(cplx(-delta * delta / (s * s), -delta * packet.z0)) * (std::numbers::inv_sqrtpi / s);
}

cplx vacuum_field(double z, double t, const SpectralPacket& packet) {
  const double u = z - packet.z0 - t;
  return std::exp(-packet.sigma * packet.sigma * u * u / 4.0);
}

cplx monochromatic_single(double delta, double z, double t, const SchemeParams& params) {
  const DispersionModel model(params);
  return mono_single(delta, model.kappa(delta), z, t, params.cloud_length);
}

std::pair<cplx, cplx> monochromatic_double(double delta, double z, double t,
                                           const SchemeParams& params) {
  const DispersionModel model(params);
  return mono_double(delta, model.kappa(delta), z, t, params.cloud_length, params.ratios());
}

FieldGrid synthesize(std::span<const double> z_axis, double t, const SpectralPacket& packet,
                     const SchemeParams& params, const QuadratureOptions& options) {
  if (!(packet.sigma > 0.0)) throw std::invalid_argument("packet sigma must be positive");

  FieldGrid grid;
  grid.z.assign(z_axis.begin(), z_axis.end());
  grid.t = t;
  grid.scheme = params.scheme;
  grid.packet = packet;
  grid.quadrature.half_width = kSpectralHalfWidth * packet.sigma;

  auto round_up = [](std::size_t n) {
    return std::max<std::size_t>(kGaussOrder, (n + kGaussOrder - 1) / kGaussOrder * kGaussOrder);
  };

  if (options.fixed_nodes) {
    const std::size_t n = round_up(*options.fixed_nodes);
    integrate(make_kernel(packet, params, n), z_axis, t, params, grid);
    grid.quadrature.nodes = n;
    return grid;
  }

  std::size_t n = round_up(options.initial_nodes);
  integrate(make_kernel(packet, params, n), z_axis, t, params, grid);
  double change = std::numeric_limits<double>::infinity();
  while (2 * n <= options.max_nodes) {
    FieldGrid finer = grid;
    integrate(make_kernel(packet, params, 2 * n), z_axis, t, params, finer);
    change = nan_max(max_diff(finer.field1, grid.field1), max_diff(finer.field2, grid.field2));
    const double scale = nan_max(nan_max(1.0, max_abs(finer.field1)), max_abs(finer.field2));
    grid = std::move(finer);
    n *= 2;
    if (!std::isfinite(change) || !std::isfinite(scale)) {
      throw QuadratureNotConverged("spectral quadrature produced non-finite field values at " +
                                   std::to_string(n) + " nodes");
    }
    if (change <= options.tolerance * scale) {
      grid.quadrature.nodes = n;
      grid.quadrature.last_change = change;
      grid.quadrature.checked = true;
      return grid;
    }
  }
  std::ostringstream os;
  os << "spectral quadrature did not converge within " << options.max_nodes
     << " nodes (last change " << change << ")";
  throw QuadratureNotConverged(os.str());
}

FieldGrid vacuum_grid(std::span<const double> z_axis, double t, const SpectralPacket& packet) {
  FieldGrid grid;
  grid.z.assign(z_axis.begin(), z_axis.end());
  grid.t = t;
  grid.packet = packet;
  grid.field1.reserve(z_axis.size());
  for (double z : z_axis) grid.field1.push_back(vacuum_field(z, t, packet));
  return grid;
}

std::vector<double> default_z_axis(const SpectralPacket& packet, double t_max, std::size_t count) {
  const double lo = packet.z0 - 5.0 * packet.spatial_width();
  const double hi = packet.z0 + t_max + 5.0 * packet.spatial_width();
  std::vector<double> z(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) z[i] = lo + step * static_cast<double>(i);
  z.back() = hi;
  return z;
}

cplx analytic_inside(double z, double t, const SpectralPacket& packet,
                     const TaylorCoefficients& taylor) {
  const cplx q = width_factor(packet, taylor, z);
  const cplx drift = (1.0 + taylor.k1) * z - packet.z0 - t;
  return taylor_envelope(drift, q, kI * taylor.k0 * z, packet);
}

cplx analytic_outside(double z, double t, const SpectralPacket& packet,
                      const TaylorCoefficients& taylor, double cloud_length) {
  const cplx q = width_factor(packet, taylor, cloud_length);
  const cplx drift = z + taylor.k1 * cloud_length - packet.z0 - t;
  return taylor_envelope(drift, q, kI * taylor.k0 * cloud_length, packet);
}

cplx analytic_single(double z, double t, const SpectralPacket& packet,
                     const TaylorCoefficients& taylor, double cloud_length) {
  if (z <= 0.0) return vacuum_field(z, t, packet);
  if (z < cloud_length) return analytic_inside(z, t, packet, taylor);
  return analytic_outside(z, t, packet, taylor, cloud_length);
}

std::pair<cplx, cplx> analytic_double(double z, double t, const SpectralPacket& packet,
                                      const SchemeParams& params) {
  const RabiRatios r = params.ratios();
  const cplx vac = vacuum_field(z, t, packet);
  if (z <= 0.0) return {vac, cplx{}};
  const auto taylor = taylor_coefficients(DispersionModel(params));
  const cplx env = analytic_single(z, t, packet, taylor, params.cloud_length);
  return {std::norm(r.r21) * vac + std::norm(r.r11) * env,
          r.r21 * std::conj(r.r11) * (env - vac)};
}

Peak locate_peak(std::span<const double> z, std::span<const cplx> field) {
  if (z.size() != field.size() || z.size() < 3) {
    throw std::invalid_argument("locate_peak needs matching arrays of at least 3 samples");
  }
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double m = std::abs(field[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  if (best == 0 || best + 1 == field.size()) {
    std::ostringstream os;
    os << "field maximum sits on the grid boundary at z = " << z[best];
    throw PeakOnBoundary(os.str());
  }

  // Parabola y = a u^2 + b u + y1 in u = z - z[best].
  const double u0 = z[best - 1] - z[best];
  const double u2 = z[best + 1] - z[best];
  const double y1 = std::norm(field[best]);
  const double d0 = std::norm(field[best - 1]) - y1;
  const double d2 = std::norm(field[best + 1]) - y1;
  const double det = u0 * u2 * (u0 - u2);
  const double a = (d0 * u2 - d2 * u0) / det;
  const double b = (u0 * u0 * d2 - u2 * u2 * d0) / det;

  Peak p{z[best], best_mag, best};
  if (a < 0.0) {
    const double vertex = std::clamp(-b / (2.0 * a), u0, u2);
    const double value = y1 + (a * vertex + b) * vertex;
    if (value >= y1) {
      p.z = z[best] + vertex;
      p.magnitude = std::sqrt(value);
    }
  }
  return p;
}

Peak locate_peak(const FieldGrid& grid, Component which, double z_from) {
  const auto& f = which == Component::Field1 ? grid.field1 : grid.field2;
  if (f.empty()) throw std::invalid_argument("grid has no second probe field");
  const auto first = static_cast<std::size_t>(
      std::lower_bound(grid.z.begin(), grid.z.end(), z_from) - grid.z.begin());
  const std::span<const double> zs(grid.z.data() + first, grid.z.size() - first);
  const std::span<const cplx> fs(f.data() + first, f.size() - first);
  Peak p = locate_peak(zs, fs);
  p.index += first;
  return p;
}

}  // namespace fastlight
