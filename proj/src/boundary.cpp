#include "geolike/boundary.hpp"

#include <cmath>
#include <numbers>

#include "geolike/errors.hpp"

namespace geolike {

BoundaryCurve BoundaryCurve::point(const Vec2& p) {
  BoundaryCurve b;
  b.point_ = p;
  return b;
}

BoundaryCurve BoundaryCurve::spline(BSplineCurve2 curve, bool closed) {
  BoundaryCurve b;
  b.curve_ = std::move(curve);
  b.closed_ = closed;
  return b;
}

BoundaryCurve BoundaryCurve::circle(const Vec2& center, double radius) {
  if (!(radius > 0.0)) throw ContractError("circle radius must be positive");
  const double w = std::numbers::sqrt2 / 2.0;
  const Vec2 dirs[9] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}};
  std::vector<Vec2> ctrl;
  std::vector<double> weights;
  for (int i = 0; i < 9; ++i) {
    ctrl.push_back(center + radius * dirs[i]);
    weights.push_back(i % 2 == 0 ? 1.0 : w);
  }
  KnotVector knots({0, 0, 0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1, 1, 1}, 2);
  return spline(BSplineCurve2(std::move(ctrl), std::move(knots), std::move(weights)), true);
}

BoundaryCurve BoundaryCurve::segment(const Vec2& a, const Vec2& b, bool closed) {
  return spline(BSplineCurve2({a, 0.5 * (a + b), b}, KnotVector({0, 0, 0, 1, 1, 1}, 2)), closed);
}

Vec2 BoundaryCurve::lift() const {
  if (!curve_ || !closed_) return Vec2::Zero();
  return curve_->control().back() - curve_->control().front();
}

double BoundaryCurve::wrap(double s) const {
  if (closed_) return s - std::floor(s);
  if (!curve_) return s;
  return check_range(s, 0.0, 1.0, "boundary curve");
}

Vec2 BoundaryCurve::eval(double s) const {
  if (!curve_) return point_;
  const KnotVector& k = curve_->knots();
  const double span = k.back() - k.front();
  if (closed_) {
    const double turns = std::floor(s);
    return curve_->eval(k.front() + (s - turns) * span) + turns * lift();
  }
  return curve_->eval(k.front() + wrap(s) * span);
}

Vec2 BoundaryCurve::tangent(double s) const {
  if (!curve_) return Vec2::Zero();
  const KnotVector& k = curve_->knots();
  const double span = k.back() - k.front();
  return span * curve_->eval(k.front() + wrap(s) * span, 1);
}

BoundaryCurve BoundaryCurve::translated(const Vec2& shift) const {
  if (!curve_) return point(point_ + shift);
  std::vector<Vec2> ctrl = curve_->control();
  for (Vec2& c : ctrl) c += shift;
  return spline(BSplineCurve2(std::move(ctrl), curve_->knots(), curve_->weights()), closed_);
}

std::vector<double> BoundaryCurve::sample_parameters(int count) const {
  if (!curve_ || count <= 1) return {0.0};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double denom = closed_ ? count : count - 1;
  for (int i = 0; i < count; ++i) out[std::size_t(i)] = double(i) / denom;
  return out;
}

}  // namespace geolike
