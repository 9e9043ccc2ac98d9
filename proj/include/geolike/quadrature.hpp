#pragma once

#include <vector>

#include "geolike/spline.hpp"

namespace geolike {

/// Nodes and weights of an integration rule over a parameter interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Highest polynomial degree integrated exactly on each panel.
  int exact_degree = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with `points` nodes on [0, 1].
QuadratureRule gauss_legendre(int points);

/// One Gauss-Legendre panel per non-empty knot span.
QuadratureRule composite_gauss_legendre(const KnotVector& knots, int points_per_panel);

/// Composite rule with 2 * degree + 1 nodes per knot span.
QuadratureRule default_quadrature(const KnotVector& knots);

}  // namespace geolike
