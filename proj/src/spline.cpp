#include "geolike/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geolike/errors.hpp"

namespace geolike {

namespace {

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double wrap_periodic(double x, double lo, double period) {
  double r = std::fmod(x - lo, period);
  if (r < 0.0) r += period;
  // fmod of a tiny negative value can round up to exactly `period`
  if (r >= period) r -= period;
  return lo + r;
}

double check_range(double x, double lo, double hi, const char* what) {
  const double slack = 1e-12 * (1.0 + std::abs(hi - lo));
  if (!(x >= lo - slack && x <= hi + slack)) {
    throw DomainError(std::string(what) + " parameter " + fmt_num(x) + " outside [" +
                      fmt_num(lo) + ", " + fmt_num(hi) + "]");
  }
  return std::clamp(x, lo, hi);
}

// ---------------------------------------------------------------------------
// KnotVector

KnotVector::KnotVector(std::vector<double> values, int degree)
    : values_(std::move(values)), degree_(degree) {
  if (degree_ < 1) throw ContractError("knot vector degree must be >= 1");
  const auto p = std::size_t(degree_);
  if (values_.size() < 2 * (p + 1)) {
    throw ContractError("knot vector needs at least 2*(degree+1) entries");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i] >= values_[i - 1])) throw ContractError("knot vector must be nondecreasing");
  }
  for (std::size_t i = 1; i <= p; ++i) {
    if (values_[i] != values_[0] || values_[values_.size() - 1 - i] != values_.back()) {
      throw ContractError("knot vector must be clamped (end knots repeated degree+1 times)");
    }
  }
  if (!(values_.back() > values_.front())) throw ContractError("knot vector has an empty range");
}

KnotVector KnotVector::clamped_uniform(int degree, int basis_count, double lo, double hi) {
  if (basis_count < degree + 1) {
    throw ContractError("clamped_uniform: need at least degree+1 basis functions");
  }
  const int spans = basis_count - degree;
  std::vector<double> v;
  v.reserve(std::size_t(basis_count + degree + 1));
  for (int i = 0; i <= degree; ++i) v.push_back(lo);
  for (int i = 1; i < spans; ++i) v.push_back(lo + (hi - lo) * double(i) / double(spans));
  for (int i = 0; i <= degree; ++i) v.push_back(hi);
  return KnotVector(std::move(v), degree);
}

int KnotVector::find_span(double x) const {
  const int n = basis_count() - 1;
  x = check_range(x, front(), back(), "knot");
  if (x >= values_[std::size_t(n + 1)]) return n;
  // upper_bound gives the first knot > x; the span starts one before it.
  auto it = std::upper_bound(values_.begin() + degree_, values_.begin() + n + 1, x);
  return int(it - values_.begin()) - 1;
}

std::vector<double> KnotVector::breakpoints() const {
  std::vector<double> out;
  for (double k : values_) {
    if (out.empty() || k > out.back()) out.push_back(k);
  }
  return out;
}

std::vector<double> KnotVector::greville() const {
  std::vector<double> out(static_cast<std::size_t>(basis_count()));
  for (int i = 0; i < basis_count(); ++i) {
    double sum = 0.0;
    for (int k = 1; k <= degree_; ++k) sum += values_[std::size_t(i + k)];
    out[std::size_t(i)] = sum / degree_;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Basis functions

Eigen::MatrixXd basis_derivatives(const KnotVector& knots, int span, double x, int max_order) {
  const int p = knots.degree();
  const auto& U = knots.values();
  Eigen::MatrixXd ndu(p + 1, p + 1);
  std::vector<double> left(std::size_t(p + 1)), right(std::size_t(p + 1));

  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[std::size_t(j)] = x - U[std::size_t(span + 1 - j)];
    right[std::size_t(j)] = U[std::size_t(span + j)] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      // lower triangle: knot differences
      ndu(j, r) = right[std::size_t(r + 1)] + left[std::size_t(j - r)];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      // upper triangle: basis values
      ndu(r, j) = saved + right[std::size_t(r + 1)] * temp;
      saved = left[std::size_t(j - r)] * temp;
    }
    ndu(j, j) = saved;
  }

  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(max_order + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= std::min(max_order, p); ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }

  double factor = p;
  for (int k = 1; k <= std::min(max_order, p); ++k) {
    ders.row(k) *= factor;
    factor *= (p - k);
  }
  return ders;
}

double basis_eval(const KnotVector& knots, int i, double x, int deriv_order) {
  if (i < 0 || i >= knots.basis_count()) throw ContractError("basis index out of range");
  if (deriv_order < 0 || deriv_order > 2) throw ContractError("derivative order must be 0, 1 or 2");
  const int span = knots.find_span(x);
  const int first = span - knots.degree();
  if (i < first || i > span) return 0.0;
  const Eigen::MatrixXd d = basis_derivatives(knots, span, std::clamp(x, knots.front(), knots.back()),
                                              deriv_order);
  return d(deriv_order, i - first);
}

// ---------------------------------------------------------------------------
// BSplineCurve2

BSplineCurve2::BSplineCurve2(std::vector<Vec2> control, KnotVector knots, std::vector<double> weights)
    : control_(std::move(control)), knots_(std::move(knots)), weights_(std::move(weights)) {
  if (int(control_.size()) != knots_.basis_count()) {
    throw ContractError("curve control count must equal knot count - degree - 1");
  }
  if (!weights_.empty()) {
    if (weights_.size() != control_.size()) throw ContractError("curve weight count mismatch");
    for (double w : weights_) {
      if (!(w > 0.0)) throw ContractError("curve weights must be strictly positive");
    }
  }
}

void BSplineCurve2::eval_all(double x, Vec2& pos, Vec2& d1, Vec2& d2) const {
  const int p = knots_.degree();
  const int span = knots_.find_span(x);
  x = std::clamp(x, knots_.front(), knots_.back());
  const Eigen::MatrixXd N = basis_derivatives(knots_, span, x, 2);
  Vec2 A[3] = {Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
  double W[3] = {0.0, 0.0, 0.0};
  for (int j = 0; j <= p; ++j) {
    const auto idx = std::size_t(span - p + j);
    const double w = weights_.empty() ? 1.0 : weights_[idx];
    for (int k = 0; k < 3; ++k) {
      A[k] += N(k, j) * w * control_[idx];
      W[k] += N(k, j) * w;
    }
  }
  if (weights_.empty()) {
    pos = A[0];
    d1 = A[1];
    d2 = A[2];
    return;
  }
  pos = A[0] / W[0];
  d1 = (A[1] - W[1] * pos) / W[0];
  d2 = (A[2] - 2.0 * W[1] * d1 - W[2] * pos) / W[0];
}

Vec2 BSplineCurve2::eval(double x, int deriv_order) const {
  if (deriv_order < 0 || deriv_order > 2) throw ContractError("derivative order must be 0, 1 or 2");
  Vec2 pos, d1, d2;
  eval_all(x, pos, d1, d2);
  if (deriv_order == 0) {
    // clamped curves interpolate their end controls exactly
    if (x <= knots_.front()) return control_.front();
    if (x >= knots_.back()) return control_.back();
    return pos;
  }
  return deriv_order == 1 ? d1 : d2;
}

BSplineCurve2 BSplineCurve2::reversed() const {
  std::vector<double> k = knots_.values();
  const double a = k.front(), b = k.back();
  std::vector<double> rk(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) rk[i] = a + b - k[k.size() - 1 - i];
  std::vector<Vec2> rc(control_.rbegin(), control_.rend());
  std::vector<double> rw(weights_.rbegin(), weights_.rend());
  return BSplineCurve2(std::move(rc), KnotVector(std::move(rk), knots_.degree()), std::move(rw));
}

// ---------------------------------------------------------------------------
// NurbsSurface

NurbsSurface::NurbsSurface(std::vector<Vec3> control_net, std::vector<double> weights,
                           KnotVector knots_u, KnotVector knots_v, Periodicity periodicity)
    : control_(std::move(control_net)),
      weights_(std::move(weights)),
      knots_u_(std::move(knots_u)),
      knots_v_(std::move(knots_v)),
      periodicity_(periodicity) {
  const auto n = std::size_t(count_u()) * std::size_t(count_v());
  if (control_.size() != n) throw ContractError("control net size inconsistent with knot vectors");
  if (weights_.empty()) weights_.assign(n, 1.0);
  if (weights_.size() != n) throw ContractError("weight grid size inconsistent with knot vectors");
  for (double w : weights_) {
    if (!(w > 0.0)) throw ContractError("surface weights must be strictly positive");
  }
  rational_ = std::any_of(weights_.begin(), weights_.end(), [](double w) { return w != 1.0; });
  const ParamDomain d = domain();
  auto check_period = [](bool on, double period, double range, const char* dir) {
    if (!on) return;
    if (!(std::abs(period - range) <= 1e-12 * (1.0 + range))) {
      throw ContractError(std::string("period in ") + dir + " must equal the knot range");
    }
  };
  check_period(periodicity_.u, periodicity_.period_u, d.u_hi - d.u_lo, "u");
  check_period(periodicity_.v, periodicity_.period_v, d.v_hi - d.v_lo, "v");

  // A periodic direction must close up: the two seam edges coincide.
  double scale = 1.0;
  for (const Vec3& p : control_) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const int samples = 9;
  for (int k = 0; k < samples; ++k) {
    const double f = double(k) / (samples - 1);
    if (periodicity_.u) {
      const double v = d.v_lo + f * (d.v_hi - d.v_lo);
      const Vec3 a = jet(d.u_lo, v).position;
      const Vec3 b = jet(std::nextafter(d.u_hi, d.u_lo), v).position;
      if ((a - b).norm() > 1e-9 * scale) throw ContractError("surface is not closed along u seam");
    }
    if (periodicity_.v) {
      const double u = d.u_lo + f * (d.u_hi - d.u_lo);
      const Vec3 a = jet(u, d.v_lo).position;
      const Vec3 b = jet(u, std::nextafter(d.v_hi, d.v_lo)).position;
      if ((a - b).norm() > 1e-9 * scale) throw ContractError("surface is not closed along v seam");
    }
  }
}

ParamDomain NurbsSurface::domain() const {
  return {knots_u_.front(), knots_u_.back(), knots_v_.front(), knots_v_.back()};
}

SurfaceJet NurbsSurface::jet(double u, double v) const {
  const ParamDomain d = domain();
  u = periodicity_.u ? wrap_periodic(u, d.u_lo, periodicity_.period_u)
                     : check_range(u, d.u_lo, d.u_hi, "surface u");
  v = periodicity_.v ? wrap_periodic(v, d.v_lo, periodicity_.period_v)
                     : check_range(v, d.v_lo, d.v_hi, "surface v");

  const int pu = knots_u_.degree(), pv = knots_v_.degree();
  const int su = knots_u_.find_span(u), sv = knots_v_.find_span(v);
  const Eigen::MatrixXd Nu = basis_derivatives(knots_u_, su, u, 2);
  const Eigen::MatrixXd Nv = basis_derivatives(knots_v_, sv, v, 2);
  const int cv = count_v();

  // Homogeneous partials A(k,l) and weight partials W(k,l) for k + l <= 2.
  Vec3 A[3][3];
  double W[3][3] = {};
  for (auto& row : A) {
    for (auto& a : row) a.setZero();
  }
  for (int i = 0; i <= pu; ++i) {
    for (int j = 0; j <= pv; ++j) {
      const auto idx = std::size_t((su - pu + i) * cv + (sv - pv + j));
      const double w = weights_[idx];
      const Vec3 wp = w * control_[idx];
      for (int k = 0; k <= 2; ++k) {
        for (int l = 0; k + l <= 2; ++l) {
          const double b = Nu(k, i) * Nv(l, j);
          A[k][l] += b * wp;
          W[k][l] += b * w;
        }
      }
    }
  }

  SurfaceJet out;
  if (!rational_) {
    out.position = A[0][0];
    out.du = A[1][0];
    out.dv = A[0][1];
    out.duu = A[2][0];
    out.duv = A[1][1];
    out.dvv = A[0][2];
    return out;
  }
  const double w0 = W[0][0];
  out.position = A[0][0] / w0;
  out.du = (A[1][0] - W[1][0] * out.position) / w0;
  out.dv = (A[0][1] - W[0][1] * out.position) / w0;
  out.duu = (A[2][0] - 2.0 * W[1][0] * out.du - W[2][0] * out.position) / w0;
  out.dvv = (A[0][2] - 2.0 * W[0][1] * out.dv - W[0][2] * out.position) / w0;
  out.duv = (A[1][1] - W[1][0] * out.dv - W[0][1] * out.du - W[1][1] * out.position) / w0;
  return out;
}

}  // namespace geolike
