#include "geolike/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "geolike/errors.hpp"

namespace geolike {

QuadratureRule gauss_legendre(int points) {
  if (points < 1) throw ContractError("quadrature needs at least one node");
  const int n = points;
  QuadratureRule rule;
  rule.nodes.resize(std::size_t(n));
  rule.weights.resize(std::size_t(n));
  rule.exact_degree = 2 * n - 1;

  // Roots of P_n on [-1, 1] by Newton iteration, mapped to [0, 1].
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[std::size_t(i)] = 0.5 * (1.0 - z);
    rule.nodes[std::size_t(n - 1 - i)] = 0.5 * (1.0 + z);
    rule.weights[std::size_t(i)] = 0.5 * w;
    rule.weights[std::size_t(n - 1 - i)] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[std::size_t(n / 2)] = 0.5;
  return rule;
}

QuadratureRule composite_gauss_legendre(const KnotVector& knots, int points_per_panel) {
  const QuadratureRule base = gauss_legendre(points_per_panel);
  const std::vector<double> breaks = knots.breakpoints();
  QuadratureRule rule;
  rule.exact_degree = base.exact_degree;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], h = breaks[k + 1] - breaks[k];
    for (std::size_t i = 0; i < base.size(); ++i) {
      rule.nodes.push_back(a + h * base.nodes[i]);
      rule.weights.push_back(h * base.weights[i]);
    }
  }
  return rule;
}

QuadratureRule default_quadrature(const KnotVector& knots) {
  return composite_gauss_legendre(knots, 2 * knots.degree() + 1);
}

}  // namespace geolike
