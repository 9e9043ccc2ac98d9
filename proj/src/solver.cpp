#include "geolike/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "geolike/errors.hpp"
#include "geolike/intersect.hpp"

namespace geolike {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kContactSamples = 512;
constexpr double kEndpointContactTol = 1e-7;

bool open_curve(const BoundaryCurve& c) { return !c.is_point() && !c.closed(); }

bool is_loop(const BoundaryCurve& c) { return c.closed() && c.lift().norm() == 0.0; }

/// Dof indices constrained to [0, 1] (endpoint parameters on open curves).
std::vector<int> bounded_indices(const DofLayout& L, const ProblemSpec& p) {
  std::vector<int> out;
  if (L.s_free && open_curve(p.c1)) out.push_back(L.s_index());
  if (L.t_free && open_curve(p.c2)) out.push_back(L.t_index());
  return out;
}

void project(DofVector& x, const std::vector<int>& bounded) {
  for (int j : bounded) x[j] = std::clamp(x[j], 0.0, 1.0);
}

/// Loops have zero lift, so s and s mod 1 give the same path.
void normalize_loops(DofVector& x, const DofLayout& L, const ProblemSpec& p) {
  if (L.s_free && is_loop(p.c1)) x[L.s_index()] -= std::floor(x[L.s_index()]);
  if (L.t_free && is_loop(p.c2)) x[L.t_index()] -= std::floor(x[L.t_index()]);
}

/// Bounded variables sitting on a bound with the gradient pushing outward.
std::vector<bool> active_set(const DofVector& x, const DofVector& g, const std::vector<int>& bounded) {
  std::vector<bool> active(std::size_t(x.size()), false);
  for (int j : bounded) {
    if ((x[j] <= 0.0 && g[j] > 0.0) || (x[j] >= 1.0 && g[j] < 0.0)) active[std::size_t(j)] = true;
  }
  return active;
}

double projected_norm(const DofVector& g, const std::vector<bool>& active) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    if (!active[std::size_t(j)]) s += g[j] * g[j];
  }
  return std::sqrt(s);
}

double safe_energy(const EnergyModel& model, const DofVector& x) {
  try {
    const double e = model.energy(x);
    return std::isfinite(e) ? e : kInf;
  } catch (const DomainError&) {
    return kInf;
  }
}

bool safe_energy_and_gradient(const EnergyModel& model, const DofVector& x, double& f, DofVector& g) {
  try {
    f = model.energy_and_gradient(x, g);
    return std::isfinite(f) && g.allFinite();
  } catch (const DomainError&) {
    return false;
  }
}

/// Forward differences of the analytic gradient over the free variables,
/// falling back to a backward difference where the forward point is infeasible.
Eigen::MatrixXd fd_hessian(const EnergyModel& model, const DofVector& x, const DofVector& g,
                           const std::vector<int>& free, const std::vector<int>& bounded, double step) {
  const auto m = Eigen::Index(free.size());
  Eigen::MatrixXd H(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const int j = free[std::size_t(c)];
    double h = step * (1.0 + std::abs(x[j]));
    const bool is_bounded = std::find(bounded.begin(), bounded.end(), j) != bounded.end();
    if (is_bounded && x[j] + h > 1.0) h = -h;
    DofVector xp = x;
    xp[j] += h;
    double fp;
    DofVector gp;
    if (!safe_energy_and_gradient(model, xp, fp, gp)) {
      xp[j] = x[j] - h;
      h = -h;
      if (!safe_energy_and_gradient(model, xp, fp, gp)) {
        throw DomainError("finite-difference Hessian: both probe points leave the domain");
      }
    }
    for (Eigen::Index r = 0; r < m; ++r) H(r, c) = (gp[free[std::size_t(r)]] - g[free[std::size_t(r)]]) / h;
  }
  return 0.5 * (H + H.transpose());
}

/// Newton step from the eigen-decomposition of H. Near-null modes are dropped
/// (pseudo-inverse); if the step is not a descent direction, curvature
/// magnitudes are used instead, which always yields descent.
Eigen::VectorXd newton_direction(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, bool& modified) {
  modified = false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success || !es.eigenvalues().allFinite()) {
    modified = true;
    return -g;
  }
  const Eigen::VectorXd lam = es.eigenvalues();
  const Eigen::MatrixXd& V = es.eigenvectors();
  const double lmax = lam.cwiseAbs().maxCoeff();
  if (!(lmax > 0.0)) {
    modified = true;
    return -g;
  }
  const Eigen::VectorXd c = V.transpose() * g;
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam[i]) > 1e-12 * lmax) coef[i] = -c[i] / lam[i];
  }
  Eigen::VectorXd d = V * coef;
  if (g.dot(d) < 0.0) return d;

  modified = true;
  for (Eigen::Index i = 0; i < lam.size(); ++i) coef[i] = -c[i] / std::max(std::abs(lam[i]), 1e-8 * lmax);
  d = V * coef;
  if (g.dot(d) < 0.0) return d;
  return -g;
}

SolveReport finish_report(const ProblemSpec& p, const EnergyModel& model, const DofVector& x) {
  SolveReport r;
  r.curve = model.assemble(x);
  r.dof = x;
  r.mode = p.mode();
  r.order = p.order;
  r.energy = model.energy(x);
  r.length = length(*p.surface, *r.curve, model.quadrature());
  r.candidate_index = p.candidate_index;
  r.candidate_shift = p.candidate_shift;
  const DofLayout& L = model.layout();
  r.s = L.s_free && p.c1.closed() ? p.c1.wrap(x[L.s_index()]) : dof_s(L, x);
  r.t = L.t_free && p.c2.closed() ? p.c2.wrap(x[L.t_index()]) : dof_t(L, x);
  return r;
}

double polyline_length(const Surface& surface, const BSplineCurve2& curve, double a, double b) {
  constexpr int n = 64;
  double len = 0.0;
  Vec3 prev = surface.point(curve.eval(a));
  for (int i = 1; i <= n; ++i) {
    const Vec3 q = surface.point(curve.eval(a + (b - a) * double(i) / n));
    len += (q - prev).norm();
    prev = q;
  }
  return len;
}

Vec2 curve_center(const BoundaryCurve& c) {
  Eigen::AlignedBox2d box;
  for (double s : c.sample_parameters(64)) box.extend(c.eval(s));
  if (c.is_point()) box.extend(c.eval(0.0));
  return box.center();
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration and problem

void SolverConfig::validate() const {
  if (!(grad_tol > 0.0) || !(step_tol > 0.0) || !(fd_hessian_step > 0.0) || !(armijo.slope > 0.0)) {
    throw ContractError("solver tolerances must be positive");
  }
  if (!(armijo.backtrack > 0.0 && armijo.backtrack < 1.0)) {
    throw ContractError("backtrack ratio must lie in (0, 1)");
  }
  if (max_iters < 0 || trim_max_rounds < 0 || armijo.max_backtracks < 1) {
    throw ContractError("iteration limits must be non-negative");
  }
}

Mode ProblemSpec::mode() const { return layout().mode(); }

KnotVector ProblemSpec::knots() const { return KnotVector::clamped_uniform(degree, order); }

DofLayout ProblemSpec::layout() const { return DofLayout::for_curves(c1, c2, order); }

ProblemSpec ProblemSpec::with_order(int new_order) const {
  ProblemSpec p = *this;
  p.order = new_order;
  return p;
}

void ProblemSpec::validate() const {
  if (!surface) throw ContractError("problem has no surface");
  if (order < 3) throw ContractError("order must be at least 3 (one interior control point)");
  if (degree < 1 || order < degree + 1) throw ContractError("order must exceed the path degree");
  const Periodicity per = surface->periodicity();
  for (const BoundaryCurve* c : {&c1, &c2}) {
    const Vec2 lift = c->lift();
    auto lattice = [](double x, bool periodic, double period) {
      if (std::abs(x) < 1e-9) return true;
      if (!periodic) return false;
      const double k = x / period;
      return std::abs(k - std::round(k)) < 1e-9;
    };
    if (!lattice(lift.x(), per.u, per.period_u) || !lattice(lift.y(), per.v, per.period_v)) {
      throw ContractError("closed boundary curve does not close on the surface");
    }
    for (double s : c->sample_parameters(64)) {
      if (!surface->admits(c->eval(s))) throw ContractError("boundary curve leaves the surface domain");
    }
    if (c->is_point() && !surface->admits(c->eval(0.0))) {
      throw ContractError("boundary point lies outside the surface domain");
    }
  }
}

// ---------------------------------------------------------------------------
// Initialization

DofVector initialize(const ProblemSpec& problem) {
  problem.validate();
  const Surface& S = *problem.surface;
  const std::vector<double> ss = problem.c1.is_point() ? std::vector<double>{0.0}
                                                       : problem.c1.sample_parameters(32);
  const std::vector<double> ts = problem.c2.is_point() ? std::vector<double>{0.0}
                                                       : problem.c2.sample_parameters(32);
  std::vector<Vec3> q(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) q[j] = S.point(problem.c2.eval(ts[j]));

  double best = kInf, s = 0.0, t = 0.0;
  for (double si : ss) {
    const Vec3 p = S.point(problem.c1.eval(si));
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const double d = (p - q[j]).norm();
      if (d < best) best = d, s = si, t = ts[j];
    }
  }

  // A seam-closing curve has the same ambient chord at s + k for every integer
  // k; take the copy nearest in the parameter plane so the path does not wind.
  auto unwind = [](const BoundaryCurve& c, double& p, const Vec2& target) {
    if (!c.closed() || c.lift().isZero()) return;
    double best_k = 0.0, best_d = kInf;
    for (double k = -2.0; k <= 2.0; k += 1.0) {
      const double d = (c.eval(p + k) - target).norm();
      if (d < best_d) best_d = d, best_k = k;
    }
    p += best_k;
  };
  unwind(problem.c1, s, problem.c2.eval(t));
  unwind(problem.c2, t, problem.c1.eval(s));

  const KnotVector knots = problem.knots();
  const std::vector<double> xi = knots.greville();
  const Vec2 a = problem.c1.eval(s), b = problem.c2.eval(t);
  std::vector<Vec2> ctrl(xi.size());
  // Greville placement makes the segment a constant-speed parametrization
  for (std::size_t i = 0; i < xi.size(); ++i) ctrl[i] = a + xi[i] * (b - a);
  return pack_dofs(problem.layout(), s, t, ctrl);
}

DofVector fit_dofs(const ProblemSpec& problem, const std::function<Vec2(double)>& source, double s,
                   double t) {
  const KnotVector knots = problem.knots();
  const DofLayout L = problem.layout();
  const int n = knots.basis_count();
  const int m = std::max(8 * n, 64);
  const Vec2 p0 = problem.c1.eval(s), pn = problem.c2.eval(t);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n - 2);
  Eigen::MatrixXd rhs(m, 2);
  for (int k = 0; k < m; ++k) {
    const double y = double(k) / (m - 1);
    const int span = knots.find_span(y);
    const Eigen::MatrixXd N = basis_derivatives(knots, span, y, 0);
    Vec2 target = source(y);
    for (int j = 0; j <= knots.degree(); ++j) {
      const int i = span - knots.degree() + j;
      if (i == 0) {
        target -= N(0, j) * p0;
      } else if (i == n - 1) {
        target -= N(0, j) * pn;
      } else {
        A(k, i - 1) = N(0, j);
      }
    }
    rhs.row(k) = target.transpose();
  }
  const Eigen::MatrixXd sol = A.colPivHouseholderQr().solve(rhs);
  std::vector<Vec2> ctrl(static_cast<std::size_t>(n));
  ctrl.front() = p0;
  ctrl.back() = pn;
  for (int i = 1; i < n - 1; ++i) ctrl[std::size_t(i)] = sol.row(i - 1).transpose();
  return pack_dofs(L, s, t, ctrl);
}

// ---------------------------------------------------------------------------
// Newton

SolveReport solve_newton(const ProblemSpec& problem, const DofVector& init, const SolverConfig& cfg) {
  problem.validate();
  cfg.validate();
  const EnergyModel model(*problem.surface, problem.c1, problem.c2, problem.knots());
  const DofLayout& L = model.layout();
  if (init.size() != L.size()) throw ContractError("initial dof vector has the wrong length");
  const std::vector<int> bounded = bounded_indices(L, problem);

  DofVector x = init;
  project(x, bounded);
  normalize_loops(x, L, problem);
  DofVector g;
  double f;
  if (!safe_energy_and_gradient(model, x, f, g)) {
    // re-run to surface the domain error with its node diagnostics
    model.energy_and_gradient(x, g);
    throw SolveError("initial curve has a non-finite energy");
  }
  const double f0 = f;

  int iters = 0;
  std::string message;
  std::vector<bool> active = active_set(x, g, bounded);
  double gnorm = projected_norm(g, active);

  while (gnorm > cfg.grad_tol) {
    if (iters >= cfg.max_iters) {
      message = "iteration limit reached";
      break;
    }
    std::vector<int> free;
    for (int j = 0; j < L.size(); ++j) {
      if (!active[std::size_t(j)]) free.push_back(j);
    }
    Eigen::VectorXd gf(Eigen::Index(free.size()));
    for (std::size_t c = 0; c < free.size(); ++c) gf[Eigen::Index(c)] = g[free[c]];

    const Eigen::MatrixXd H = fd_hessian(model, x, g, free, bounded, cfg.fd_hessian_step);
    bool modified = false;
    Eigen::VectorXd d = newton_direction(H, gf, modified);

    auto try_direction = [&](const Eigen::VectorXd& dir, DofVector& xt, double& ft) {
      double alpha = 1.0;
      for (int b = 0; b < cfg.armijo.max_backtracks; ++b, alpha *= cfg.armijo.backtrack) {
        xt = x;
        for (std::size_t c = 0; c < free.size(); ++c) xt[free[c]] += alpha * dir[Eigen::Index(c)];
        project(xt, bounded);
        ft = safe_energy(model, xt);
        if (xt != x && ft <= f + cfg.armijo.slope * g.dot(xt - x)) return true;
      }
      return false;
    };

    DofVector xt;
    double ft = kInf;
    bool accepted = false;
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f));
    if (!modified && std::abs(gf.dot(d)) < noise) {
      // The predicted decrease is below round-off in E, so Armijo can only
      // pass by luck. Use the gradient norm as the merit instead.
      double alpha = 1.0;
      for (int b = 0; b < 8 && !accepted; ++b, alpha *= 0.5) {
        DofVector xn = x;
        for (std::size_t c = 0; c < free.size(); ++c) xn[free[c]] += alpha * d[Eigen::Index(c)];
        project(xn, bounded);
        double fn;
        DofVector gn;
        if (safe_energy_and_gradient(model, xn, fn, gn) && fn <= f + noise &&
            projected_norm(gn, active_set(xn, gn, bounded)) < gnorm) {
          xt = xn;
          ft = fn;
          accepted = true;
        }
      }
    }
    if (!accepted) accepted = try_direction(d, xt, ft);
    if (!accepted) {
      const Eigen::VectorXd sd = -gf;
      accepted = try_direction(sd, xt, ft);
    }
    if (!accepted) {
      message = "line search failed";
      break;
    }

    const double step = (xt - x).norm();
    x = xt;
    normalize_loops(x, L, problem);
    ++iters;
    if (!safe_energy_and_gradient(model, x, f, g)) throw SolveError("accepted step has no gradient");
    active = active_set(x, g, bounded);
    gnorm = projected_norm(g, active);
    if (step <= cfg.step_tol * (1.0 + x.norm())) {
      if (gnorm > cfg.grad_tol) message = "step below tolerance";
      break;
    }
  }

  SolveReport r = finish_report(problem, model, x);
  r.initial_energy = f0;
  r.grad_norm = gnorm;
  r.iterations = iters;
  r.converged = gnorm <= cfg.grad_tol;
  r.message = message;

  if (r.converged) {
    // local-minimum spot check
    constexpr double kProbe = 1e-4, kDrop = 1e-9;
    for (int j = 0; j < L.size() && !r.saddle; ++j) {
      for (double sign : {-1.0, 1.0}) {
        DofVector xp = x;
        xp[j] += sign * kProbe;
        const bool is_bounded = std::find(bounded.begin(), bounded.end(), j) != bounded.end();
        if (is_bounded && (xp[j] < 0.0 || xp[j] > 1.0)) continue;
        if (safe_energy(model, xp) < r.energy - kDrop) r.saddle = true;
      }
    }
    if (r.saddle) r.message = "stationary point is not a local minimum";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Trimming

std::vector<Contact> interior_contacts(const ProblemSpec& problem, const BSplineCurve2& curve) {
  std::vector<Contact> out;
  const Vec2 start = curve.eval(0.0), end = curve.eval(1.0);
  const ParamCurve fa = [&](double x) { return curve.eval(x); };
  for (int which : {1, 2}) {
    const BoundaryCurve& c = which == 1 ? problem.c1 : problem.c2;
    if (c.is_point()) continue;
    const bool lifted = c.closed() && !is_loop(c);
    const double b0 = lifted ? -1.0 : 0.0, b1 = lifted ? 2.0 : 1.0;
    const int samples = lifted ? 3 * kContactSamples : kContactSamples;
    const ParamCurve fb = [&](double s) { return c.eval(s); };
    for (const Crossing& k : find_crossings(fa, 0.0, 1.0, fb, b0, b1, samples)) {
      if (which == 1 && (k.a < kEndpointContactTol || (k.point - start).norm() < 1e-9)) continue;
      if (which == 2 && (k.a > 1.0 - kEndpointContactTol || (k.point - end).norm() < 1e-9)) continue;
      out.push_back({k.a, which, k.b});
    }
  }
  std::sort(out.begin(), out.end(), [](const Contact& a, const Contact& b) { return a.x < b.x; });
  return out;
}

SolveReport trim_and_resolve(const ProblemSpec& problem, const SolveReport& report, const SolverConfig& cfg) {
  if (!report.curve) throw ContractError("trim_and_resolve needs a report with a curve");
  SolveReport r = report;
  const DofLayout L = problem.layout();
  for (int round = 0;; ++round) {
    const std::vector<Contact> contacts = interior_contacts(problem, *r.curve);
    if (contacts.empty()) {
      r.trim_rounds = round;
      return r;
    }
    if (round >= cfg.trim_max_rounds) {
      r.trim_rounds = round;
      r.converged = false;
      r.trim_failed = true;
      r.message = "trimming did not remove interior contacts within " + std::to_string(round) + " rounds";
      return r;
    }

    std::vector<Contact> all;
    all.push_back({0.0, 1, dof_s(L, r.dof)});
    all.insert(all.end(), contacts.begin(), contacts.end());
    all.push_back({1.0, 2, dof_t(L, r.dof)});

    std::size_t best = 0;
    double best_len = -1.0;
    for (std::size_t k = 0; k + 1 < all.size(); ++k) {
      if (all[k].which == all[k + 1].which) continue;
      const double len = polyline_length(*problem.surface, *r.curve, all[k].x, all[k + 1].x);
      if (len > best_len) best_len = len, best = k;
    }
    const Contact a = all[best], b = all[best + 1];
    const BSplineCurve2 source = *r.curve;
    const bool forward = a.which == 1;
    const double s = forward ? a.param : b.param;
    const double t = forward ? b.param : a.param;
    const auto piece = [&](double y) {
      return source.eval(forward ? a.x + y * (b.x - a.x) : b.x - y * (b.x - a.x));
    };
    const DofVector init = fit_dofs(problem, piece, s, t);
    const int prev_iters = r.iterations;
    r = solve_newton(problem, init, cfg);
    r.iterations += prev_iters;
  }
}

// ---------------------------------------------------------------------------
// Periodic candidates and distance

std::vector<ProblemSpec> periodic_candidates(const ProblemSpec& problem) {
  problem.validate();
  const Periodicity per = problem.surface->periodicity();
  // The second copy of c1 sits one period toward c2 in each periodic direction.
  const Vec2 c1c = curve_center(problem.c1), c2c = curve_center(problem.c2);
  const double du = per.u ? (c1c.x() <= c2c.x() ? per.period_u : -per.period_u) : 0.0;
  const double dv = per.v ? (c1c.y() <= c2c.y() ? per.period_v : -per.period_v) : 0.0;

  std::vector<Vec2> shifts{Vec2::Zero()};
  if (per.u && per.v) {
    shifts = {Vec2(0, 0), Vec2(du, 0), Vec2(0, dv), Vec2(du, dv)};
  } else if (per.u) {
    shifts.push_back(Vec2(du, 0));
  } else if (per.v) {
    shifts.push_back(Vec2(0, dv));
  }

  std::vector<ProblemSpec> out;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    ProblemSpec p = problem;
    p.c1 = problem.c1.translated(shifts[i]);
    p.candidate_index = int(i);
    p.candidate_shift = shifts[i];
    out.push_back(std::move(p));
  }
  return out;
}

bool curves_intersect(const BoundaryCurve& c1, const BoundaryCurve& c2) {
  const ParamCurve f1 = [&](double s) { return c1.eval(s); };
  const ParamCurve f2 = [&](double s) { return c2.eval(s); };
  if (c1.is_point() && c2.is_point()) return (c1.eval(0) - c2.eval(0)).norm() <= 1e-12;
  if (c1.is_point() || c2.is_point()) {
    const Vec2 p = c1.is_point() ? c1.eval(0) : c2.eval(0);
    const ParamCurve& f = c1.is_point() ? f2 : f1;
    const double s = closest_parameter(f, 0.0, 1.0, p);
    return (f(s) - p).norm() <= 1e-9;
  }
  return !find_crossings(f1, 0.0, 1.0, f2, 0.0, 1.0, kContactSamples).empty();
}

namespace {

SolveReport zero_distance_report(const ProblemSpec& problem) {
  Vec2 at = problem.c1.eval(0.0);
  double s = 0.0, t = 0.0;
  const ParamCurve f1 = [&](double x) { return problem.c1.eval(x); };
  const ParamCurve f2 = [&](double x) { return problem.c2.eval(x); };
  if (problem.c1.is_point() && !problem.c2.is_point()) {
    t = closest_parameter(f2, 0.0, 1.0, at);
  } else if (problem.c2.is_point() && !problem.c1.is_point()) {
    at = problem.c2.eval(0.0);
    s = closest_parameter(f1, 0.0, 1.0, at);
  } else if (!problem.c1.is_point()) {
    const auto hits = find_crossings(f1, 0.0, 1.0, f2, 0.0, 1.0, kContactSamples);
    if (!hits.empty()) at = hits.front().point, s = hits.front().a, t = hits.front().b;
  }
  SolveReport r;
  const KnotVector knots = problem.knots();
  r.curve = BSplineCurve2(std::vector<Vec2>(std::size_t(knots.basis_count()), at), knots);
  r.dof = pack_dofs(problem.layout(), s, t, r.curve->control());
  r.mode = problem.mode();
  r.order = problem.order;
  r.s = s;
  r.t = t;
  r.converged = true;
  r.zero_distance = true;
  r.message = "boundary curves intersect";
  return r;
}

}  // namespace

CandidateSolutions solve_candidates(const ProblemSpec& problem, const SolverConfig& cfg) {
  problem.validate();
  cfg.validate();
  CandidateSolutions out;
  if (curves_intersect(problem.c1, problem.c2)) {
    out.problems.push_back(problem);
    out.reports.push_back(zero_distance_report(problem));
    out.winner = 0;
    return out;
  }
  out.problems = periodic_candidates(problem);
  for (const ProblemSpec& cand : out.problems) {
    SolveReport r;
    try {
      r = solve_newton(cand, initialize(cand), cfg);
      r = trim_and_resolve(cand, r, cfg);
    } catch (const std::exception& e) {
      r = SolveReport{};
      r.mode = cand.mode();
      r.order = cand.order;
      r.candidate_index = cand.candidate_index;
      r.candidate_shift = cand.candidate_shift;
      r.length = kInf;
      r.message = e.what();
    }
    out.reports.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < out.reports.size(); ++i) {
    const SolveReport& r = out.reports[i];
    if (!r.converged) continue;
    // exact ties keep the lower index
    if (out.winner < 0 || r.length < out.reports[std::size_t(out.winner)].length) {
      out.winner = int(i);
    }
  }
  return out;
}

SolveReport solve_distance(const ProblemSpec& problem, const SolverConfig& cfg) {
  return pick_winner(solve_candidates(problem, cfg));
}

SolveReport pick_winner(const CandidateSolutions& all) {
  if (all.winner >= 0) return all.reports[std::size_t(all.winner)];
  std::string msg = "no candidate converged:";
  bool trim = false;
  for (const SolveReport& r : all.reports) {
    char buf[128];
    std::snprintf(buf, sizeof buf, " [candidate %d: grad_norm %.3g, iterations %d, ", r.candidate_index,
                  r.grad_norm, r.iterations);
    msg += buf + r.message + "]";
    trim = trim || r.trim_failed;
  }
  if (trim) throw TrimError(msg);
  throw SolveError(msg);
}

std::vector<SolveReport> refine_order(const ProblemSpec& problem, const SolverConfig& cfg,
                                      const std::vector<int>& schedule) {
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) throw ContractError("order schedule must be increasing");
  }
  std::vector<SolveReport> out;
  std::optional<ProblemSpec> winner;  // candidate problem of the last success
  std::optional<SolveReport> previous;
  for (int order : schedule) {
    SolveReport r;
    try {
      if (!previous) {
        const ProblemSpec p = problem.with_order(order);
        CandidateSolutions all = solve_candidates(p, cfg);
        if (all.winner < 0) throw SolveError("no candidate converged at order " + std::to_string(order));
        winner = all.problems[std::size_t(all.winner)];
        r = all.reports[std::size_t(all.winner)];
      } else {
        const ProblemSpec p = winner->with_order(order);
        const DofLayout prev_layout = winner->with_order(previous->order).layout();
        const BSplineCurve2 src = *previous->curve;
        const DofVector init = fit_dofs(p, [&](double y) { return src.eval(y); },
                                        dof_s(prev_layout, previous->dof), dof_t(prev_layout, previous->dof));
        r = trim_and_resolve(p, solve_newton(p, init, cfg), cfg);
        winner = p;
      }
    } catch (const std::exception& e) {
      r = SolveReport{};
      r.order = order;
      r.mode = problem.mode();
      r.length = kInf;
      r.message = e.what();
    }
    if (r.converged) previous = r;
    out.push_back(std::move(r));
  }
  return out;
}

BruteForceResult brute_force_distance(std::shared_ptr<const Surface> surface, const BoundaryCurve& c1,
                                      const BoundaryCurve& c2, int m, int n, const SolverConfig& cfg,
                                      int order) {
  if (m < 1 || n < 1) throw ContractError("brute force needs at least one sample per curve");
  const std::vector<double> ss = c1.is_point() ? std::vector<double>{0.0} : c1.sample_parameters(m);
  const std::vector<double> ts = c2.is_point() ? std::vector<double>{0.0} : c2.sample_parameters(n);
  BruteForceResult out;
  out.length = kInf;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      ProblemSpec p;
      p.surface = surface;
      p.c1 = BoundaryCurve::point(c1.eval(ss[i]));
      p.c2 = BoundaryCurve::point(c2.eval(ts[j]));
      p.order = order;
      ++out.pairs;
      try {
        const SolveReport r = solve_distance(p, cfg);
        if (r.length < out.length) out.length = r.length, out.i = int(i), out.j = int(j);
      } catch (const std::exception&) {
        ++out.failures;
      }
    }
  }
  if (out.i < 0) throw SolveError("brute force: every point pair failed");
  return out;
}

double contact_angle(const Surface& surface, const BSplineCurve2& curve, bool at_end, const BoundaryCurve& c,
                     double param) {
  const double x = at_end ? 1.0 : 0.0;
  const Vec2 p = curve.eval(x);
  const SurfaceJet J = surface.jet(p);
  const Vec2 da = curve.eval(x, 1);
  const Vec2 dc = c.is_point() ? Vec2::Zero() : c.tangent(param);
  const Vec3 a = J.du * da.x() + J.dv * da.y();
  const Vec3 b = J.du * dc.x() + J.dv * dc.y();
  if (a.norm() < 1e-14 || b.norm() < 1e-14) {
    throw DegenerateTangentError(std::string("zero tangent at the contact with ") + (at_end ? "c2" : "c1"));
  }
  const double cosang = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
  return std::acos(cosang) * 180.0 / std::numbers::pi;
}

EndpointAngles endpoint_orthogonality(const Surface& surface, const SolveReport& report,
                                      const BoundaryCurve& c1, const BoundaryCurve& c2) {
  if (!report.curve) throw ContractError("report has no curve");
  return {contact_angle(surface, *report.curve, false, c1, report.s),
          contact_angle(surface, *report.curve, true, c2, report.t)};
}

}  // namespace geolike
