#pragma once

#include <optional>
#include <string>

#include "geolike/spline.hpp"
#include "geolike/types.hpp"

namespace geolike {

enum class SurfaceKind { plane, sphere, cylinder, torus, revolution };

std::string to_string(SurfaceKind kind);
SurfaceKind surface_kind_from_string(const std::string& name);

/// Closed-form test surfaces with the same jet interface as NurbsSurface.
///
/// Parametrizations (u is the angular coordinate where one exists):
///   plane       x = (u, v, 0) over a rectangular domain
///   sphere      x = R (cos v cos u, cos v sin u, sin v), v in [-pi/2, pi/2]
///   cylinder    x = (r cos u, r sin u, v), v in [0, height]
///   torus       x = ((R + r cos v) cos u, (R + r cos v) sin u, r sin v)
///   revolution  x = (rho(v) cos u, rho(v) sin u, z(v)) for a profile (rho, z)
/// Angular directions are 2*pi periodic.
class AnalyticSurface {
 public:
  static AnalyticSurface plane(ParamDomain domain = {-100.0, 100.0, -100.0, 100.0});
  static AnalyticSurface sphere(double radius);
  static AnalyticSurface cylinder(double radius, double height);
  static AnalyticSurface torus(double major_radius, double minor_radius);
  static AnalyticSurface revolution(BSplineCurve2 profile);

  SurfaceKind kind() const { return kind_; }
  double radius() const { return a_; }
  double height() const { return b_; }
  double major_radius() const { return a_; }
  double minor_radius() const { return b_; }
  const std::optional<BSplineCurve2>& profile() const { return profile_; }

  ParamDomain domain() const { return domain_; }
  const Periodicity& periodicity() const { return periodicity_; }

  SurfaceJet jet(double u, double v) const;

  bool operator==(const AnalyticSurface&) const = default;

 private:
  AnalyticSurface(SurfaceKind kind, double a, double b, ParamDomain domain, Periodicity periodicity);

  SurfaceKind kind_;
  double a_ = 0.0;
  double b_ = 0.0;
  ParamDomain domain_;
  Periodicity periodicity_;
  std::optional<BSplineCurve2> profile_;
};

inline SurfaceJet analytic_jet(const AnalyticSurface& s, double u, double v) { return s.jet(u, v); }

/// Geodesic distance between two parameter points when a closed form exists.
/// Plane: Euclidean. Sphere: R times the central angle. Cylinder: sqrt((r dtheta)^2 + dz^2)
/// with dtheta taken the shorter way around. Torus and revolution have no closed
/// form and return std::nullopt.
std::optional<double> analytic_distance(const AnalyticSurface& s, const Vec2& p, const Vec2& q);

}  // namespace geolike
