#pragma once

#include <map>
#include <memory>
#include <string>

#include "geolike/boundary.hpp"
#include "geolike/surface.hpp"

namespace geolike {

/// A surface and the named boundary curves that live on it.
struct Scene {
  std::shared_ptr<const Surface> surface;
  std::map<std::string, BoundaryCurve> curves;

  const BoundaryCurve& curve(const std::string& name) const;
  bool operator==(const Scene& other) const;
};

/// JSON scene format:
///
///   { "surface": { "analytic": { "kind": "torus", "major_radius": 2, "minor_radius": 0.5 } },
///     "curves": { "a": { "point": [u, v] },
///                 "b": { "bspline": { "degree": 2, "controls": [[u, v], ...],
///                                     "knots": [...], "weights": [...], "closed": true } } } }
///
/// Analytic kinds: plane (domain [u0, u1, v0, v1]), sphere (radius),
/// cylinder (radius, height), torus (major_radius, minor_radius),
/// revolution (profile, a bspline object in (rho, z)).
/// A NURBS surface is { "nurbs": { "degree_u", "degree_v", "knots_u", "knots_v",
/// "count_u", "count_v", "control": [[x, y, z], ...] (row-major in u),
/// "weights" (optional), "periodic_u", "periodic_v" } }.
/// Curves also accept { "circle": { "center", "radius" } } and
/// { "segment": { "from", "to", "closed" } }; both are stored as bsplines.
///
/// Throws InputError with the offending path on malformed input, and
/// ContractError when the geometry is invalid.
Scene parse_scene(const std::string& text);
std::string serialize_scene(const Scene& scene);
Scene load_scene(const std::string& path);
void save_scene(const Scene& scene, const std::string& path);

}  // namespace geolike
