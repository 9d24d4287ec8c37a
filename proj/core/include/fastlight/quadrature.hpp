#pragma once

#include <cstddef>
#include <vector>

namespace fastlight {

inline constexpr std::size_t kGaussOrder = 8;

/// Nodes and weights of a fixed composite rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Composite kGaussOrder-point Gauss-Legendre rule on [a, b] split into
/// `panels` equal panels. Nodes are in increasing order.
QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels);

}  // namespace fastlight
