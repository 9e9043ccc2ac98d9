#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "geolike/types.hpp"

namespace geolike {

/// Clamped, nondecreasing knot sequence of a B-spline basis.
class KnotVector {
 public:
  KnotVector(std::vector<double> values, int degree);

  /// Uniform clamped knots on [lo, hi] for `basis_count` functions.
  static KnotVector clamped_uniform(int degree, int basis_count, double lo = 0.0,
                                    double hi = 1.0);

  int degree() const { return degree_; }
  const std::vector<double>& values() const { return values_; }
  int basis_count() const { return int(values_.size()) - degree_ - 1; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  /// Index s with knots[s] <= x < knots[s+1]; the last non-empty span at x == back().
  int find_span(double x) const;

  /// Distinct knot values (span boundaries).
  std::vector<double> breakpoints() const;

  /// Greville abscissae, one per basis function.
  std::vector<double> greville() const;

  bool operator==(const KnotVector&) const = default;

 private:
  std::vector<double> values_;
  int degree_;
};

/// Nonzero basis functions N_{span-p..span} and their derivatives at x.
/// Row k holds the k-th derivative. Cox-de Boor with explicit derivative
/// recurrences.
Eigen::MatrixXd basis_derivatives(const KnotVector& knots, int span, double x, int max_order);

/// N_i(x), N_i'(x) or N_i''(x).
double basis_eval(const KnotVector& knots, int i, double x, int deriv_order);

/// Planar (optionally rational) B-spline curve in parameter units.
class BSplineCurve2 {
 public:
  BSplineCurve2(std::vector<Vec2> control, KnotVector knots, std::vector<double> weights = {});

  const std::vector<Vec2>& control() const { return control_; }
  const KnotVector& knots() const { return knots_; }
  const std::vector<double>& weights() const { return weights_; }
  bool rational() const { return !weights_.empty(); }
  int degree() const { return knots_.degree(); }

  /// Position (order 0) or derivative (order 1, 2) at x.
  Vec2 eval(double x, int deriv_order = 0) const;

  /// Position, first and second derivative in one pass.
  void eval_all(double x, Vec2& pos, Vec2& d1, Vec2& d2) const;

  BSplineCurve2 reversed() const;

  bool operator==(const BSplineCurve2&) const = default;

 private:
  std::vector<Vec2> control_;
  KnotVector knots_;
  std::vector<double> weights_;
};

inline Vec2 curve_eval(const BSplineCurve2& c, double x, int deriv_order = 0) {
  return c.eval(x, deriv_order);
}

/// Tensor-product NURBS surface. Control points are stored row-major:
/// index i * count_v + j for basis i in u and j in v.
class NurbsSurface {
 public:
  NurbsSurface(std::vector<Vec3> control_net, std::vector<double> weights, KnotVector knots_u,
               KnotVector knots_v, Periodicity periodicity = {});

  const std::vector<Vec3>& control_net() const { return control_; }
  const std::vector<double>& weights() const { return weights_; }
  const KnotVector& knots_u() const { return knots_u_; }
  const KnotVector& knots_v() const { return knots_v_; }
  const Periodicity& periodicity() const { return periodicity_; }
  ParamDomain domain() const;
  int count_u() const { return knots_u_.basis_count(); }
  int count_v() const { return knots_v_.basis_count(); }
  /// False when every weight is exactly 1; evaluation then skips the quotient.
  bool rational() const { return rational_; }

  SurfaceJet jet(double u, double v) const;

  bool operator==(const NurbsSurface&) const = default;

 private:
  std::vector<Vec3> control_;
  std::vector<double> weights_;
  KnotVector knots_u_;
  KnotVector knots_v_;
  Periodicity periodicity_;
  bool rational_ = false;
};

inline SurfaceJet surface_jet(const NurbsSurface& s, double u, double v) { return s.jet(u, v); }

/// Translate x into [lo, lo + period).
double wrap_periodic(double x, double lo, double period);

/// Clamp x into [lo, hi] when it is within round-off of the interval,
/// otherwise throw DomainError naming `what`.
double check_range(double x, double lo, double hi, const char* what);

}  // namespace geolike
