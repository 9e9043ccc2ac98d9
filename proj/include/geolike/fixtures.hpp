#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geolike/boundary.hpp"
#include "geolike/scene.hpp"
#include "geolike/surface.hpp"

namespace geolike::fixtures {

/// A surface with two named boundary curves and, when known, the exact
/// distance between them.
struct Scenario {
  std::string name;
  std::shared_ptr<const Surface> surface;
  BoundaryCurve c1;
  BoundaryCurve c2;
  std::optional<double> reference;
  std::string c1_name = "c1";
  std::string c2_name = "c2";

  Scene scene() const;
};

/// Plane, circles of radii r1 < r2 about the origin.
Scenario plane_concentric_circles(double r1 = 1.0, double r2 = 2.0);

/// Cylinder of radius r, parallel circles at heights z1 < z2.
Scenario cylinder_parallel_circles(double r = 1.0, double height = 3.0, double z1 = 0.5, double z2 = 2.0);

/// Torus, two circles of constant v. The short way between them crosses the v seam.
Scenario torus_parallel_circles(double R = 2.0, double r = 0.5, double v1 = 0.3, double v2 = 4.5);

/// Cylinder of radius 1 as a surface of revolution whose profile height is
/// quadratic in the parameter, with two helical segments. Straight lines of
/// the developed cylinder are curved in this parametrization, so the path has
/// to converge with order.
Scenario helical_strips();

/// Exact rational NURBS cylinder: nine-point circle in u (period 1), linear in v.
NurbsSurface nurbs_cylinder(double radius, double height);

/// Cubic NURBS patch with bumps and two circular holes (eyes of a face-like relief).
Scenario bumpy_face();

/// Surface of revolution with a convex bump profile; c1 and c2 are a small loop
/// and a parallel circle.
Scenario revolution_bump();

/// Planar crossing case for trimming: a unit circle and a small circle at
/// (3, 0), with a solved path that starts on the far side of the unit circle.
Scenario plane_crossing();

/// The two_curves fixtures above.
std::vector<Scenario> all();

/// Scenes shipped with the CLI, by name: every fixture plus a sphere and a
/// cylinder scene with named points.
std::vector<std::pair<std::string, Scene>> example_scenes();

}  // namespace geolike::fixtures
