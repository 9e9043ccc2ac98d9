#pragma once

#include <variant>

#include "geolike/catalog.hpp"
#include "geolike/spline.hpp"

namespace geolike {

/// A parametric surface: either a tensor-product NURBS patch or an analytic
/// catalog entry. Immutable; safe to share across threads.
class Surface {
 public:
  Surface(NurbsSurface s) : impl_(std::move(s)) {}       // NOLINT(google-explicit-constructor)
  Surface(AnalyticSurface s) : impl_(std::move(s)) {}    // NOLINT(google-explicit-constructor)

  SurfaceJet jet(double u, double v) const {
    return std::visit([&](const auto& s) { return s.jet(u, v); }, impl_);
  }
  SurfaceJet jet(const Vec2& p) const { return jet(p.x(), p.y()); }
  Vec3 point(const Vec2& p) const { return jet(p).position; }

  ParamDomain domain() const {
    return std::visit([](const auto& s) { return s.domain(); }, impl_);
  }
  Periodicity periodicity() const {
    return std::visit([](const auto& s) { return s.periodicity(); }, impl_);
  }

  /// Is p inside the base domain, allowing any value along periodic directions.
  bool admits(const Vec2& p, double slack = 1e-12) const;

  const NurbsSurface* nurbs() const { return std::get_if<NurbsSurface>(&impl_); }
  const AnalyticSurface* analytic() const { return std::get_if<AnalyticSurface>(&impl_); }

  bool operator==(const Surface&) const = default;

 private:
  std::variant<NurbsSurface, AnalyticSurface> impl_;
};

}  // namespace geolike
