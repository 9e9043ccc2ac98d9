#include "geolike/energy.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "geolike/errors.hpp"

namespace geolike {

namespace {

SurfaceJet jet_at_node(const Surface& surface, const Vec2& p, std::size_t node, double x) {
  try {
    return surface.jet(p);
  } catch (const DomainError& e) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "quadrature node %zu (x = %.17g): ", node, x);
    throw DomainError(buf + std::string(e.what()));
  }
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::two_points: return "two_points";
    case Mode::point_curve: return "point_curve";
    case Mode::two_curves: return "two_curves";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Layout and assembly

DofLayout DofLayout::for_curves(const BoundaryCurve& c1, const BoundaryCurve& c2, int control_count) {
  if (control_count < 3) throw ContractError("a path needs at least 3 control points");
  return DofLayout{!c1.is_point(), !c2.is_point(), control_count - 2};
}

Mode DofLayout::mode() const {
  switch (endpoint_count()) {
    case 0: return Mode::two_points;
    case 1: return Mode::point_curve;
    default: return Mode::two_curves;
  }
}

double dof_s(const DofLayout& layout, const DofVector& dof) {
  return layout.s_free ? dof[layout.s_index()] : 0.0;
}

double dof_t(const DofLayout& layout, const DofVector& dof) {
  return layout.t_free ? dof[layout.t_index()] : 0.0;
}

DofVector pack_dofs(const DofLayout& layout, double s, double t, std::span<const Vec2> control) {
  if (int(control.size()) != layout.interior + 2) throw ContractError("pack_dofs: control count mismatch");
  DofVector dof(layout.size());
  if (layout.s_free) dof[layout.s_index()] = s;
  if (layout.t_free) dof[layout.t_index()] = t;
  for (int i = 1; i <= layout.interior; ++i) {
    dof[layout.u_index(i)] = control[std::size_t(i)].x();
    dof[layout.v_index(i)] = control[std::size_t(i)].y();
  }
  return dof;
}

static std::vector<Vec2> controls_from(const DofLayout& layout, const DofVector& dof,
                                       const BoundaryCurve& c1, const BoundaryCurve& c2) {
  if (dof.size() != layout.size()) {
    throw ContractError("dof vector length " + std::to_string(dof.size()) + " does not match layout " +
                        std::to_string(layout.size()));
  }
  std::vector<Vec2> ctrl(std::size_t(layout.interior + 2));
  ctrl.front() = c1.eval(dof_s(layout, dof));
  ctrl.back() = c2.eval(dof_t(layout, dof));
  for (int i = 1; i <= layout.interior; ++i) {
    ctrl[std::size_t(i)] = Vec2(dof[layout.u_index(i)], dof[layout.v_index(i)]);
  }
  return ctrl;
}

BSplineCurve2 assemble_curve(const DofVector& dof, const BoundaryCurve& c1, const BoundaryCurve& c2,
                             const KnotVector& knots) {
  const DofLayout layout = DofLayout::for_curves(c1, c2, knots.basis_count());
  return BSplineCurve2(controls_from(layout, dof, c1, c2), knots);
}

// ---------------------------------------------------------------------------
// EnergyModel

EnergyModel::EnergyModel(const Surface& surface, BoundaryCurve c1, BoundaryCurve c2, KnotVector knots,
                         QuadratureRule quad)
    : surface_(&surface),
      c1_(std::move(c1)),
      c2_(std::move(c2)),
      knots_(std::move(knots)),
      quad_(std::move(quad)),
      layout_(DofLayout::for_curves(c1_, c2_, knots_.basis_count())) {
  const int p = knots_.degree();
  nodes_.reserve(quad_.size());
  for (std::size_t k = 0; k < quad_.size(); ++k) {
    const double x = quad_.nodes[k];
    const int span = knots_.find_span(x);
    const Eigen::MatrixXd d = basis_derivatives(knots_, span, x, 1);
    Node node{span - p, quad_.weights[k], {}, {}};
    for (int j = 0; j <= p; ++j) {
      node.n0.push_back(d(0, j));
      node.n1.push_back(d(1, j));
    }
    nodes_.push_back(std::move(node));
  }
}

EnergyModel::EnergyModel(const Surface& surface, BoundaryCurve c1, BoundaryCurve c2, KnotVector knots)
    : EnergyModel(surface, std::move(c1), std::move(c2), knots, default_quadrature(knots)) {}

std::vector<Vec2> EnergyModel::controls(const DofVector& dof) const {
  return controls_from(layout_, dof, c1_, c2_);
}

BSplineCurve2 EnergyModel::assemble(const DofVector& dof) const {
  return BSplineCurve2(controls(dof), knots_);
}

double EnergyModel::energy(const DofVector& dof) const {
  const std::vector<Vec2> ctrl = controls(dof);
  double e = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const Node& nd = nodes_[k];
    Vec2 a = Vec2::Zero(), da = Vec2::Zero();
    for (std::size_t j = 0; j < nd.n0.size(); ++j) {
      a += nd.n0[j] * ctrl[std::size_t(nd.first) + j];
      da += nd.n1[j] * ctrl[std::size_t(nd.first) + j];
    }
    const SurfaceJet J = jet_at_node(*surface_, a, k, quad_.nodes[k]);
    const Vec3 vel = J.du * da.x() + J.dv * da.y();
    e += nd.weight * vel.squaredNorm();
  }
  return 0.5 * e;
}

double EnergyModel::length(const DofVector& dof) const {
  return geolike::length(*surface_, assemble(dof), quad_);
}

double EnergyModel::energy_and_gradient(const DofVector& dof, DofVector& grad) const {
  const std::vector<Vec2> ctrl = controls(dof);
  std::vector<Vec2> g_ctrl(ctrl.size(), Vec2::Zero());
  double e = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const Node& nd = nodes_[k];
    Vec2 a = Vec2::Zero(), da = Vec2::Zero();
    for (std::size_t j = 0; j < nd.n0.size(); ++j) {
      a += nd.n0[j] * ctrl[std::size_t(nd.first) + j];
      da += nd.n1[j] * ctrl[std::size_t(nd.first) + j];
    }
    const SurfaceJet J = jet_at_node(*surface_, a, k, quad_.nodes[k]);
    const Vec3 vel = J.du * da.x() + J.dv * da.y();
    e += nd.weight * vel.squaredNorm();

    // d vel / d a_u and d vel / d a_v through the surface partials
    const Vec3 dvel_du = J.duu * da.x() + J.duv * da.y();
    const Vec3 dvel_dv = J.duv * da.x() + J.dvv * da.y();
    const double w = nd.weight;
    const double pu = w * vel.dot(dvel_du), pv = w * vel.dot(dvel_dv);
    const double qu = w * vel.dot(J.du), qv = w * vel.dot(J.dv);
    for (std::size_t j = 0; j < nd.n0.size(); ++j) {
      Vec2& g = g_ctrl[std::size_t(nd.first) + j];
      g.x() += pu * nd.n0[j] + qu * nd.n1[j];
      g.y() += pv * nd.n0[j] + qv * nd.n1[j];
    }
  }

  grad.resize(layout_.size());
  if (layout_.s_free) grad[layout_.s_index()] = g_ctrl.front().dot(c1_.tangent(dof[layout_.s_index()]));
  if (layout_.t_free) grad[layout_.t_index()] = g_ctrl.back().dot(c2_.tangent(dof[layout_.t_index()]));
  for (int i = 1; i <= layout_.interior; ++i) {
    grad[layout_.u_index(i)] = g_ctrl[std::size_t(i)].x();
    grad[layout_.v_index(i)] = g_ctrl[std::size_t(i)].y();
  }
  return 0.5 * e;
}

DofVector EnergyModel::gradient(const DofVector& dof) const {
  DofVector g;
  energy_and_gradient(dof, g);
  return g;
}

// ---------------------------------------------------------------------------
// Free functions

namespace {

template <class F>
void for_each_velocity(const Surface& surface, const BSplineCurve2& curve, const QuadratureRule& quad,
                       F&& f) {
  for (std::size_t k = 0; k < quad.size(); ++k) {
    Vec2 a, da, dda;
    curve.eval_all(quad.nodes[k], a, da, dda);
    const SurfaceJet J = jet_at_node(surface, a, k, quad.nodes[k]);
    f(quad.weights[k], Vec3(J.du * da.x() + J.dv * da.y()));
  }
}

}  // namespace

double energy(const Surface& surface, const BSplineCurve2& curve, const QuadratureRule& quad) {
  double e = 0.0;
  for_each_velocity(surface, curve, quad, [&](double w, const Vec3& vel) { e += w * vel.squaredNorm(); });
  return 0.5 * e;
}

double length(const Surface& surface, const BSplineCurve2& curve, const QuadratureRule& quad) {
  double l = 0.0;
  for_each_velocity(surface, curve, quad, [&](double w, const Vec3& vel) { l += w * vel.norm(); });
  return l;
}

DofVector energy_gradient(const Surface& surface, const DofVector& dof, const BoundaryCurve& c1,
                          const BoundaryCurve& c2, const KnotVector& knots, const QuadratureRule& quad) {
  return EnergyModel(surface, c1, c2, knots, quad).gradient(dof);
}

Christoffel christoffel(const SurfaceJet& J) {
  if (J.du.cross(J.dv).norm() < 1e-12) throw SingularityError("degenerate metric");
  const double E = J.du.dot(J.du), F = J.du.dot(J.dv), G = J.dv.dot(J.dv);
  const double det = E * G - F * F;
  // Christoffel symbols of the first kind are x_ij . x_k; raise the index with g^{-1}.
  auto raise = [&](const Vec3& xij) {
    const double a = xij.dot(J.du), b = xij.dot(J.dv);
    return Vec2((G * a - F * b) / det, (E * b - F * a) / det);
  };
  return {raise(J.duu), raise(J.duv), raise(J.dvv)};
}

double geodesic_residual(const Surface& surface, const CurveSampler& curve,
                         std::span<const double> samples) {
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    Vec2 a, da, dda;
    curve(samples[k], a, da, dda);
    const SurfaceJet J = surface.jet(a);
    Christoffel G;
    try {
      G = christoffel(J);
    } catch (const SingularityError&) {
      char buf[192];
      std::snprintf(buf, sizeof buf, "degenerate metric at sample %zu (x = %.17g, u = %.17g, v = %.17g)",
                    k, samples[k], a.x(), a.y());
      throw SingularityError(buf);
    }
    const Vec2 r = dda + G.uu * (da.x() * da.x()) + 2.0 * G.uv * (da.x() * da.y()) +
                   G.vv * (da.y() * da.y());
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double geodesic_residual(const Surface& surface, const BSplineCurve2& curve,
                         std::span<const double> samples) {
  return geodesic_residual(
      surface, [&](double x, Vec2& a, Vec2& da, Vec2& dda) { curve.eval_all(x, a, da, dda); }, samples);
}

std::vector<double> span_midpoints(const KnotVector& knots) {
  const std::vector<double> b = knots.breakpoints();
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) out.push_back(0.5 * (b[i] + b[i + 1]));
  return out;
}

double error_percent(double computed_length, double reference_length) {
  if (!(reference_length > 0.0)) throw DomainError("error_percent: reference length must be positive");
  return (computed_length - reference_length) / reference_length * 100.0;
}

}  // namespace geolike
