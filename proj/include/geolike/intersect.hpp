#pragma once

#include <functional>
#include <vector>

#include "geolike/types.hpp"

namespace geolike {

using ParamCurve = std::function<Vec2(double)>;

/// A crossing between curve a at parameter `a` and curve b at parameter `b`.
struct Crossing {
  double a;
  double b;
  Vec2 point;
};

/// Crossings of two parameter-plane curves. Each curve is sampled into a
/// `samples`-point polyline, crossing segment pairs are found by orientation
/// tests, and every hit is refined by bisecting both parameter intervals
/// until they are narrower than `tol`. Results are sorted by `a`.
std::vector<Crossing> find_crossings(const ParamCurve& fa, double a0, double a1, const ParamCurve& fb,
                                     double b0, double b1, int samples = 512, double tol = 1e-10);

/// Intersection parameters (ta, tb) of segments p0p1 and q0q1, if they meet.
bool segment_intersection(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1, double& ta,
                          double& tb);

/// Closest point on a curve to p by dense sampling plus golden-section refinement.
double closest_parameter(const ParamCurve& f, double a0, double a1, const Vec2& p, int samples = 512);

}  // namespace geolike
