#include "geolike/surface.hpp"

#include <cmath>

namespace geolike {

bool Surface::admits(const Vec2& p, double slack) const {
  const ParamDomain d = domain();
  const Periodicity per = periodicity();
  const double su = slack * (1.0 + std::abs(d.u_hi - d.u_lo));
  const double sv = slack * (1.0 + std::abs(d.v_hi - d.v_lo));
  const bool u_ok = per.u || (p.x() >= d.u_lo - su && p.x() <= d.u_hi + su);
  const bool v_ok = per.v || (p.y() >= d.v_lo - sv && p.y() <= d.v_hi + sv);
  return u_ok && v_ok && std::isfinite(p.x()) && std::isfinite(p.y());
}

}  // namespace geolike
