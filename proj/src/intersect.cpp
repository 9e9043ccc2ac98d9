#include "geolike/intersect.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace geolike {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

bool segment_intersection(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1, double& ta,
                          double& tb) {
  const Vec2 r = p1 - p0, s = q1 - q0, qp = q0 - p0;
  const double denom = cross2(r, s);
  const double scale = r.norm() * s.norm();
  if (std::abs(denom) <= 1e-14 * scale || scale == 0.0) return false;  // parallel or degenerate
  ta = cross2(qp, s) / denom;
  tb = cross2(qp, r) / denom;
  return ta >= 0.0 && ta <= 1.0 && tb >= 0.0 && tb <= 1.0;
}

std::vector<Crossing> find_crossings(const ParamCurve& fa, double a0, double a1, const ParamCurve& fb,
                                     double b0, double b1, int samples, double tol) {
  const auto n = static_cast<std::size_t>(std::max(samples, 2));
  std::vector<double> ta(n), tb(n);
  std::vector<Vec2> pa(n), pb(n);
  for (std::size_t i = 0; i < n; ++i) {
    ta[i] = a0 + (a1 - a0) * double(i) / double(n - 1);
    tb[i] = b0 + (b1 - b0) * double(i) / double(n - 1);
    pa[i] = fa(ta[i]);
    pb[i] = fb(tb[i]);
  }

  // bounding boxes of b's segments for cheap rejection
  std::vector<Eigen::AlignedBox2d> boxes(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) boxes[j].extend(pb[j]).extend(pb[j + 1]);

  std::vector<Crossing> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Eigen::AlignedBox2d box_a;
    box_a.extend(pa[i]).extend(pa[i + 1]);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (!box_a.intersects(boxes[j])) continue;
      double sa, sb;
      if (!segment_intersection(pa[i], pa[i + 1], pb[j], pb[j + 1], sa, sb)) continue;
      // Bisection on both intervals, following a sub-pair whose chords cross.
      double alo = ta[i], ahi = ta[i + 1];
      double blo = tb[j], bhi = tb[j + 1];
      Vec2 A0 = pa[i], A1 = pa[i + 1];
      Vec2 B0 = pb[j], B1 = pb[j + 1];
      while (ahi - alo > tol || bhi - blo > tol) {
        const double am = 0.5 * (alo + ahi), bm = 0.5 * (blo + bhi);
        const Vec2 Am = fa(am), Bm = fb(bm);
        const double as[3] = {alo, am, ahi}, bs[3] = {blo, bm, bhi};
        const Vec2 Ap[3] = {A0, Am, A1}, Bp[3] = {B0, Bm, B1};
        bool found = false;
        for (int ia = 0; ia < 2 && !found; ++ia) {
          for (int ib = 0; ib < 2 && !found; ++ib) {
            double ua, ub;
            if (segment_intersection(Ap[ia], Ap[ia + 1], Bp[ib], Bp[ib + 1], ua, ub)) {
              alo = as[ia], ahi = as[ia + 1], blo = bs[ib], bhi = bs[ib + 1];
              A0 = Ap[ia], A1 = Ap[ia + 1], B0 = Bp[ib], B1 = Bp[ib + 1];
              sa = ua, sb = ub;
              found = true;
            }
          }
        }
        if (!found) break;
      }
      const double a = alo + sa * (ahi - alo);
      const double b = blo + sb * (bhi - blo);
      out.push_back({a, b, A0 + sa * (A1 - A0)});
    }
  }

  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) { return x.a < y.a; });
  // a crossing at a shared polyline vertex is reported by both adjacent segments
  std::vector<Crossing> unique;
  for (const Crossing& c : out) {
    if (!unique.empty() && (c.point - unique.back().point).norm() < 1e-8 &&
        std::abs(c.a - unique.back().a) < 1e-6 * std::abs(a1 - a0)) {
      continue;
    }
    unique.push_back(c);
  }
  return unique;
}

double closest_parameter(const ParamCurve& f, double a0, double a1, const Vec2& p, int samples) {
  const int n = std::max(samples, 2);
  double best = a0, best_d = (f(a0) - p).squaredNorm();
  for (int i = 1; i < n; ++i) {
    const double a = a0 + (a1 - a0) * double(i) / (n - 1);
    const double d = (f(a) - p).squaredNorm();
    if (d < best_d) best = a, best_d = d;
  }
  const double h = (a1 - a0) / (n - 1);
  double lo = std::max(a0, best - h), hi = std::min(a1, best + h);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = (f(x1) - p).squaredNorm(), f2 = (f(x2) - p).squaredNorm();
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++it) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = (f(x1) - p).squaredNorm();
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = (f(x2) - p).squaredNorm();
    }
  }
  const double mid = 0.5 * (lo + hi);
  return (f(mid) - p).squaredNorm() < best_d ? mid : best;
}

}  // namespace geolike
