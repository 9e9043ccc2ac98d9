#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "geolike/boundary.hpp"
#include "geolike/quadrature.hpp"
#include "geolike/spline.hpp"
#include "geolike/surface.hpp"

namespace geolike {

/// Which endpoints slide. A point boundary freezes its endpoint.
enum class Mode { two_points, point_curve, two_curves };

std::string to_string(Mode mode);

using DofVector = Eigen::VectorXd;

/// Layout of the unknowns: [s?, t?, u_1..u_{n-1}, v_1..v_{n-1}] for a curve with
/// n + 1 control points. s is the parameter on c1, t the one on c2.
struct DofLayout {
  bool s_free = false;
  bool t_free = false;
  int interior = 0;  // n - 1

  static DofLayout for_curves(const BoundaryCurve& c1, const BoundaryCurve& c2, int control_count);

  Mode mode() const;
  int endpoint_count() const { return int(s_free) + int(t_free); }
  int size() const { return endpoint_count() + 2 * interior; }
  int s_index() const { return 0; }
  int t_index() const { return int(s_free); }
  int u_index(int i) const { return endpoint_count() + (i - 1); }
  int v_index(int i) const { return endpoint_count() + interior + (i - 1); }
};

/// Endpoint parameters stored in a dof vector (0 for frozen endpoints).
double dof_s(const DofLayout& layout, const DofVector& dof);
double dof_t(const DofLayout& layout, const DofVector& dof);

/// Curve whose first control point is c1(s), last is c2(t), interior from dof.
BSplineCurve2 assemble_curve(const DofVector& dof, const BoundaryCurve& c1, const BoundaryCurve& c2,
                             const KnotVector& knots);

/// Inverse of assemble_curve's interior placement: pack controls and endpoint
/// parameters into a dof vector.
DofVector pack_dofs(const DofLayout& layout, double s, double t, std::span<const Vec2> control);

/// Discretized energy of a path x(alpha(x)) together with its analytic
/// gradient. Basis values at the quadrature nodes are tabulated once, so
/// repeated evaluation only touches the surface.
///
/// The gradient is that of the quadrature sum itself, so energy and gradient
/// agree to round-off and finite-difference checks are clean.
class EnergyModel {
 public:
  EnergyModel(const Surface& surface, BoundaryCurve c1, BoundaryCurve c2, KnotVector knots,
              QuadratureRule quad);
  EnergyModel(const Surface& surface, BoundaryCurve c1, BoundaryCurve c2, KnotVector knots);

  const DofLayout& layout() const { return layout_; }
  const KnotVector& knots() const { return knots_; }
  const QuadratureRule& quadrature() const { return quad_; }
  const Surface& surface() const { return *surface_; }
  const BoundaryCurve& c1() const { return c1_; }
  const BoundaryCurve& c2() const { return c2_; }

  std::vector<Vec2> controls(const DofVector& dof) const;
  BSplineCurve2 assemble(const DofVector& dof) const;

  double energy(const DofVector& dof) const;
  double length(const DofVector& dof) const;
  DofVector gradient(const DofVector& dof) const;
  double energy_and_gradient(const DofVector& dof, DofVector& grad) const;

 private:
  struct Node {
    int first;  // index of the first nonzero basis function
    double weight;
    std::vector<double> n0;
    std::vector<double> n1;
  };

  const Surface* surface_;
  BoundaryCurve c1_;
  BoundaryCurve c2_;
  KnotVector knots_;
  QuadratureRule quad_;
  DofLayout layout_;
  std::vector<Node> nodes_;
};

/// 1/2 sum_k w_k |d/dx x(alpha(x_k))|^2.
double energy(const Surface& surface, const BSplineCurve2& curve, const QuadratureRule& quad);

/// sum_k w_k |d/dx x(alpha(x_k))|.
double length(const Surface& surface, const BSplineCurve2& curve, const QuadratureRule& quad);

DofVector energy_gradient(const Surface& surface, const DofVector& dof, const BoundaryCurve& c1,
                          const BoundaryCurve& c2, const KnotVector& knots,
                          const QuadratureRule& quad);

/// Samples (alpha, alpha', alpha'') of a parameter-plane curve at x.
using CurveSampler = std::function<void(double x, Vec2& pos, Vec2& d1, Vec2& d2)>;

/// Christoffel symbols of the second kind at a surface point.
struct Christoffel {
  Vec2 uu;  // (Gamma^1_11, Gamma^2_11)
  Vec2 uv;  // (Gamma^1_12, Gamma^2_12)
  Vec2 vv;  // (Gamma^1_22, Gamma^2_22)
};

/// From the first fundamental form and its derivatives. Throws SingularityError
/// when |x_u x x_v| < 1e-12.
Christoffel christoffel(const SurfaceJet& jet);

/// Max over samples of |alpha'' + Gamma(alpha', alpha')|, the geodesic
/// equation residual. Samples should avoid knots of reduced continuity.
double geodesic_residual(const Surface& surface, const CurveSampler& curve,
                         std::span<const double> samples);
double geodesic_residual(const Surface& surface, const BSplineCurve2& curve,
                         std::span<const double> samples);

/// Midpoints of every knot span, where a quadratic path is smooth.
std::vector<double> span_midpoints(const KnotVector& knots);

/// (computed - reference) / reference * 100.
double error_percent(double computed_length, double reference_length);

}  // namespace geolike
