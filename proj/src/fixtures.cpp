#include "geolike/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace geolike::fixtures {

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const Surface> share(Surface s) { return std::make_shared<const Surface>(std::move(s)); }

// Quadratic Bezier through f(0), f(1/2), f(1) componentwise.
BSplineCurve2 quadratic_through(const Vec2& a, const Vec2& mid, const Vec2& b) {
  return BSplineCurve2({a, 2.0 * mid - 0.5 * (a + b), b}, KnotVector({0, 0, 0, 1, 1, 1}, 2));
}

// Height profile of the helical strips: z(v) = 0.8 v + 1.2 v^2 on [0, 1].
double strip_height(double v) { return 0.8 * v + 1.2 * v * v; }

// Helix z = k u + c of the developed cylinder, as a curve in (u, v) for v in [v0, v1].
BoundaryCurve helix(double k, double c, double v0, double v1) {
  auto at = [&](double v) { return Vec2((strip_height(v) - c) / k, v); };
  return BoundaryCurve::spline(quadratic_through(at(v0), at(0.5 * (v0 + v1)), at(v1)), false);
}

}  // namespace

Scenario plane_concentric_circles(double r1, double r2) {
  return {"plane_circles", share(AnalyticSurface::plane({-5.0, 5.0, -5.0, 5.0})),
          BoundaryCurve::circle(Vec2::Zero(), r1), BoundaryCurve::circle(Vec2::Zero(), r2), r2 - r1, "inner", "outer"};
}

Scenario cylinder_parallel_circles(double r, double height, double z1, double z2) {
  const double tp = 2.0 * kPi;
  return {"cylinder_circles", share(AnalyticSurface::cylinder(r, height)),
          BoundaryCurve::segment({0.0, z1}, {tp, z1}, true), BoundaryCurve::segment({0.0, z2}, {tp, z2}, true),
          std::abs(z2 - z1), "lower", "upper"};
}

Scenario torus_parallel_circles(double R, double r, double v1, double v2) {
  const double tp = 2.0 * kPi;
  double dv = std::fmod(std::abs(v2 - v1), tp);
  dv = std::min(dv, tp - dv);
  return {"torus_circles", share(AnalyticSurface::torus(R, r)),
          BoundaryCurve::segment({0.0, v1}, {tp, v1}, true), BoundaryCurve::segment({0.0, v2}, {tp, v2}, true),
          r * dv, "ring_a", "ring_b"};
}

Scenario helical_strips() {
  // Profile (1, z(v)) as a quadratic Bezier: controls (1, 0), (1, 0.4), (1, 2).
  BSplineCurve2 profile({{1.0, 0.0}, {1.0, 0.4}, {1.0, 2.0}}, KnotVector({0, 0, 0, 1, 1, 1}, 2));
  // In the developed plane c1 lies on z = u/5 + 0.3 and c2 on z = u/2 + 0.9.
  // The strips diverge to the right, so the closest pair is the start of c1
  // and its perpendicular foot on c2.
  const double v0 = 0.27;
  const double u0 = (strip_height(v0) - 0.3) / 0.2;
  const double gap = (0.5 * u0 + 0.9 - (0.2 * u0 + 0.3)) / std::sqrt(1.25);
  return {"helical_strips", share(AnalyticSurface::revolution(std::move(profile))), helix(0.2, 0.3, v0, 0.5),
          helix(0.5, 0.9, 0.25, 0.88), gap, "strip_a", "strip_b"};
}

NurbsSurface nurbs_cylinder(double radius, double height) {
  const double w = std::numbers::sqrt2 / 2.0;
  const Vec2 dirs[9] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}};
  std::vector<Vec3> net;
  std::vector<double> weights;
  for (int i = 0; i < 9; ++i) {
    for (double z : {0.0, height}) {
      net.emplace_back(radius * dirs[i].x(), radius * dirs[i].y(), z);
      weights.push_back(i % 2 == 0 ? 1.0 : w);
    }
  }
  KnotVector ku({0, 0, 0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1, 1, 1}, 2);
  KnotVector kv({0, 0, 1, 1}, 1);
  return NurbsSurface(std::move(net), std::move(weights), std::move(ku), std::move(kv),
                      Periodicity{true, false, 1.0, 0.0});
}

Scenario bumpy_face() {
  // Cubic patch on [0, 1]^2 with 8 x 4 control points; heights form two
  // brow ridges and a nose ridge.
  const int nu = 8, nv = 4;
  const double heights[nu][nv] = {
      {0.00, 0.05, 0.05, 0.00}, {0.05, 0.30, 0.10, 0.05}, {0.10, 0.45, 0.20, 0.05},
      {0.05, 0.20, 0.35, 0.10}, {0.05, 0.20, 0.35, 0.10}, {0.10, 0.45, 0.20, 0.05},
      {0.05, 0.30, 0.10, 0.05}, {0.00, 0.05, 0.05, 0.00}};
  std::vector<Vec3> net;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) net.emplace_back(double(i) / (nu - 1), double(j) / (nv - 1), heights[i][j]);
  }
  NurbsSurface patch(std::move(net), std::vector<double>(std::size_t(nu * nv), 1.0),
                     KnotVector::clamped_uniform(3, nu), KnotVector::clamped_uniform(3, nv));
  return {"bumpy_face", share(std::move(patch)), BoundaryCurve::circle({0.3, 0.6}, 0.08),
          BoundaryCurve::circle({0.7, 0.6}, 0.08), std::nullopt, "left_eye", "right_eye"};
}

Scenario revolution_bump() {
  // A single quartic Bezier keeps the surface smooth everywhere.
  BSplineCurve2 profile({{1.0, 0.0}, {1.3, 0.5}, {1.6, 1.0}, {1.3, 1.5}, {1.0, 2.0}},
                        KnotVector::clamped_uniform(4, 5));
  return {"revolution_bump", share(AnalyticSurface::revolution(std::move(profile))),
          BoundaryCurve::segment({0.0, 0.2}, {2.0 * kPi, 0.2}, true), BoundaryCurve::circle({kPi, 0.7}, 0.15),
          std::nullopt, "parallel", "loop"};
}

Scenario plane_crossing() {
  return {"plane_crossing", share(AnalyticSurface::plane({-5.0, 5.0, -5.0, 5.0})),
          BoundaryCurve::circle(Vec2::Zero(), 1.0), BoundaryCurve::circle({3.0, 0.0}, 0.25), 1.75, "disk", "target"};
}

Scene Scenario::scene() const {
  Scene s;
  s.surface = surface;
  s.curves.emplace(c1_name, c1);
  s.curves.emplace(c2_name, c2);
  return s;
}

std::vector<Scenario> all() {
  return {plane_concentric_circles(), cylinder_parallel_circles(), torus_parallel_circles(), helical_strips(),
          bumpy_face(), revolution_bump()};
}

std::vector<std::pair<std::string, Scene>> example_scenes() {
  std::vector<std::pair<std::string, Scene>> out;
  for (const Scenario& sc : all()) out.emplace_back(sc.name, sc.scene());
  {
    const Scenario sc = plane_crossing();
    out.emplace_back(sc.name, sc.scene());
  }
  {
    Scene s;
    s.surface = share(AnalyticSurface::sphere(1.0));
    s.curves.emplace("a", BoundaryCurve::point({0.0, 0.3}));
    s.curves.emplace("b", BoundaryCurve::point({std::acos(std::tan(0.3) * std::tan(0.2)), -0.2}));
    s.curves.emplace("equator", BoundaryCurve::segment({0.0, 0.0}, {2.0 * kPi, 0.0}, true));
    s.curves.emplace("p", BoundaryCurve::point({1.0, 0.7}));
    out.emplace_back("sphere", std::move(s));
  }
  {
    Scene s;
    s.surface = share(AnalyticSurface::cylinder(1.0, 3.0));
    s.curves.emplace("a", BoundaryCurve::point({0.0, 1.0}));
    s.curves.emplace("b", BoundaryCurve::point({0.5 * kPi, 2.0}));
    s.curves.emplace("c", BoundaryCurve::point({1.5 * kPi, 1.5}));
    out.emplace_back("cylinder_points", std::move(s));
  }
  return out;
}

}  // namespace geolike::fixtures
