#include "fastlight/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <stdexcept>

namespace fastlight {

QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels) {
  if (panels == 0 || !(a < b)) throw std::invalid_argument("composite rule needs a < b and panels > 0");

  using Gauss = boost::math::quadrature::gauss<double, kGaussOrder>;
  // Boost stores the non-negative half of the symmetric rule.
  const auto& half_x = Gauss::abscissa();
  const auto& half_w = Gauss::weights();
  std::vector<double> x;
  std::vector<double> w;
  for (std::size_t i = half_x.size(); i-- > 0;) {
    if (half_x[i] == 0.0) continue;
    x.push_back(-half_x[i]);
    w.push_back(half_w[i]);
  }
  for (std::size_t i = 0; i < half_x.size(); ++i) {
    x.push_back(half_x[i]);
    w.push_back(half_w[i]);
  }

  QuadratureRule rule;
  rule.nodes.reserve(panels * x.size());
  rule.weights.reserve(panels * x.size());
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + width * (static_cast<double>(p) + 0.5);
    for (std::size_t k = 0; k < x.size(); ++k) {
      rule.nodes.push_back(mid + 0.5 * width * x[k]);
      rule.weights.push_back(0.5 * width * w[k]);
    }
  }
  return rule;
}

}  // namespace fastlight
