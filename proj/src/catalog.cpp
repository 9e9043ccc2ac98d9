#include "geolike/catalog.hpp"

#include <cmath>
#include <numbers>

#include "geolike/errors.hpp"

namespace geolike {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Periodicity angular_u() { return {true, false, kTwoPi, 0.0}; }

}  // namespace

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::plane: return "plane";
    case SurfaceKind::sphere: return "sphere";
    case SurfaceKind::cylinder: return "cylinder";
    case SurfaceKind::torus: return "torus";
    case SurfaceKind::revolution: return "revolution";
  }
  return "unknown";
}

SurfaceKind surface_kind_from_string(const std::string& name) {
  for (auto k : {SurfaceKind::plane, SurfaceKind::sphere, SurfaceKind::cylinder, SurfaceKind::torus,
                 SurfaceKind::revolution}) {
    if (to_string(k) == name) return k;
  }
  throw ContractError("unknown analytic surface kind '" + name + "'");
}

AnalyticSurface::AnalyticSurface(SurfaceKind kind, double a, double b, ParamDomain domain,
                                 Periodicity periodicity)
    : kind_(kind), a_(a), b_(b), domain_(domain), periodicity_(periodicity) {}

AnalyticSurface AnalyticSurface::plane(ParamDomain domain) {
  if (!(domain.u_hi > domain.u_lo && domain.v_hi > domain.v_lo)) {
    throw ContractError("plane domain must be non-empty");
  }
  return AnalyticSurface(SurfaceKind::plane, 0.0, 0.0, domain, {});
}

AnalyticSurface AnalyticSurface::sphere(double radius) {
  if (!(radius > 0.0)) throw ContractError("sphere radius must be positive");
  const double h = std::numbers::pi / 2.0;
  return AnalyticSurface(SurfaceKind::sphere, radius, 0.0, {0.0, kTwoPi, -h, h}, angular_u());
}

AnalyticSurface AnalyticSurface::cylinder(double radius, double height) {
  if (!(radius > 0.0) || !(height > 0.0)) {
    throw ContractError("cylinder radius and height must be positive");
  }
  return AnalyticSurface(SurfaceKind::cylinder, radius, height, {0.0, kTwoPi, 0.0, height},
                         angular_u());
}

AnalyticSurface AnalyticSurface::torus(double major_radius, double minor_radius) {
  if (!(minor_radius > 0.0) || !(major_radius > minor_radius)) {
    throw ContractError("torus requires R > r > 0");
  }
  return AnalyticSurface(SurfaceKind::torus, major_radius, minor_radius, {0.0, kTwoPi, 0.0, kTwoPi},
                         {true, true, kTwoPi, kTwoPi});
}

AnalyticSurface AnalyticSurface::revolution(BSplineCurve2 profile) {
  const auto& k = profile.knots();
  for (const Vec2& c : profile.control()) {
    // the convex hull property keeps the profile radius positive
    if (!(c.x() > 0.0)) throw ContractError("revolution profile radius must stay positive");
  }
  AnalyticSurface s(SurfaceKind::revolution, 0.0, 0.0, {0.0, kTwoPi, k.front(), k.back()},
                    angular_u());
  s.profile_ = std::move(profile);
  return s;
}

SurfaceJet AnalyticSurface::jet(double u, double v) const {
  if (!periodicity_.u) u = check_range(u, domain_.u_lo, domain_.u_hi, "surface u");
  if (!periodicity_.v) v = check_range(v, domain_.v_lo, domain_.v_hi, "surface v");

  SurfaceJet j;
  switch (kind_) {
    case SurfaceKind::plane:
      j.position = Vec3(u, v, 0.0);
      j.du = Vec3(1.0, 0.0, 0.0);
      j.dv = Vec3(0.0, 1.0, 0.0);
      break;
    case SurfaceKind::sphere: {
      const double R = a_;
      const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
      j.position = R * Vec3(cv * cu, cv * su, sv);
      j.du = R * Vec3(-cv * su, cv * cu, 0.0);
      j.dv = R * Vec3(-sv * cu, -sv * su, cv);
      j.duu = R * Vec3(-cv * cu, -cv * su, 0.0);
      j.duv = R * Vec3(sv * su, -sv * cu, 0.0);
      j.dvv = R * Vec3(-cv * cu, -cv * su, -sv);
      break;
    }
    case SurfaceKind::cylinder: {
      const double r = a_;
      const double cu = std::cos(u), su = std::sin(u);
      j.position = Vec3(r * cu, r * su, v);
      j.du = Vec3(-r * su, r * cu, 0.0);
      j.dv = Vec3(0.0, 0.0, 1.0);
      j.duu = Vec3(-r * cu, -r * su, 0.0);
      break;
    }
    case SurfaceKind::torus: {
      const double R = a_, r = b_;
      const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
      const double rho = R + r * cv;
      j.position = Vec3(rho * cu, rho * su, r * sv);
      j.du = Vec3(-rho * su, rho * cu, 0.0);
      j.dv = Vec3(-r * sv * cu, -r * sv * su, r * cv);
      j.duu = Vec3(-rho * cu, -rho * su, 0.0);
      j.duv = Vec3(r * sv * su, -r * sv * cu, 0.0);
      j.dvv = Vec3(-r * cv * cu, -r * cv * su, -r * sv);
      break;
    }
    case SurfaceKind::revolution: {
      Vec2 p, d1, d2;
      profile_->eval_all(v, p, d1, d2);
      const double cu = std::cos(u), su = std::sin(u);
      j.position = Vec3(p.x() * cu, p.x() * su, p.y());
      j.du = Vec3(-p.x() * su, p.x() * cu, 0.0);
      j.dv = Vec3(d1.x() * cu, d1.x() * su, d1.y());
      j.duu = Vec3(-p.x() * cu, -p.x() * su, 0.0);
      j.duv = Vec3(-d1.x() * su, d1.x() * cu, 0.0);
      j.dvv = Vec3(d2.x() * cu, d2.x() * su, d2.y());
      break;
    }
  }
  return j;
}

std::optional<double> analytic_distance(const AnalyticSurface& s, const Vec2& p, const Vec2& q) {
  switch (s.kind()) {
    case SurfaceKind::plane:
      return (p - q).norm();
    case SurfaceKind::sphere: {
      const Vec3 a = s.jet(p.x(), p.y()).position.normalized();
      const Vec3 b = s.jet(q.x(), q.y()).position.normalized();
      // atan2 form stays accurate for nearly equal and nearly antipodal points
      return s.radius() * std::atan2(a.cross(b).norm(), a.dot(b));
    }
    case SurfaceKind::cylinder: {
      double dtheta = std::fmod(std::abs(p.x() - q.x()), kTwoPi);
      dtheta = std::min(dtheta, kTwoPi - dtheta);
      return std::hypot(s.radius() * dtheta, p.y() - q.y());
    }
    case SurfaceKind::torus:
    case SurfaceKind::revolution:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace geolike
