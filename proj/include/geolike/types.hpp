#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace geolike {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Axis-aligned base parameter domain [u_lo, u_hi] x [v_lo, v_hi].
struct ParamDomain {
  double u_lo = 0.0;
  double u_hi = 1.0;
  double v_lo = 0.0;
  double v_hi = 1.0;

  bool operator==(const ParamDomain&) const = default;
};

/// Periodicity of a parametrization. A periodic direction accepts any real
/// parameter; it is translated into the base domain before evaluation.
struct Periodicity {
  bool u = false;
  bool v = false;
  double period_u = 0.0;
  double period_v = 0.0;

  int directions() const { return int(u) + int(v); }

  bool operator==(const Periodicity&) const = default;
};

/// Position with first and second partial derivatives of a parametrization.
struct SurfaceJet {
  Vec3 position = Vec3::Zero();
  Vec3 du = Vec3::Zero();
  Vec3 dv = Vec3::Zero();
  Vec3 duu = Vec3::Zero();
  Vec3 duv = Vec3::Zero();
  Vec3 dvv = Vec3::Zero();
};

}  // namespace geolike
