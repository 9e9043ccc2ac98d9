#pragma once

#include <optional>
#include <vector>

#include "geolike/spline.hpp"
#include "geolike/types.hpp"

namespace geolike {

/// A curve in the parameter domain on which a path endpoint slides, or a
/// single fixed point.
///
/// The curve parameter s runs over [0, 1]. A closed curve accepts any real s:
/// s is reduced modulo 1 and the curve is continued by its lift c(1) - c(0),
/// which is zero for a loop and one period for a curve that closes through a
/// periodic seam. Sliding across the seam is therefore continuous.
class BoundaryCurve {
 public:
  static BoundaryCurve point(const Vec2& p);
  static BoundaryCurve spline(BSplineCurve2 curve, bool closed);

  /// Exact rational quadratic circle (nine control points), counter-clockwise from angle 0.
  static BoundaryCurve circle(const Vec2& center, double radius);
  /// Straight segment as a quadratic with collinear controls (constant speed).
  static BoundaryCurve segment(const Vec2& a, const Vec2& b, bool closed = false);

  bool is_point() const { return !curve_.has_value(); }
  bool closed() const { return closed_; }
  const std::optional<BSplineCurve2>& curve() const { return curve_; }

  /// c(1) - c(0); zero for points and open curves.
  Vec2 lift() const;

  Vec2 eval(double s) const;
  /// dc/ds.
  Vec2 tangent(double s) const;

  /// Map s into the curve's native range: modulo 1 for closed curves, checked
  /// against [0, 1] otherwise.
  double wrap(double s) const;

  BoundaryCurve translated(const Vec2& shift) const;

  /// `count` samples at s = i / count (closed) or i / (count - 1) (open).
  std::vector<double> sample_parameters(int count) const;

  bool operator==(const BoundaryCurve&) const = default;

 private:
  BoundaryCurve() = default;

  Vec2 point_ = Vec2::Zero();
  std::optional<BSplineCurve2> curve_;
  bool closed_ = false;
};

}  // namespace geolike
