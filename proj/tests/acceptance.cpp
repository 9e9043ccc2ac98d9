// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "geolike/catalog.hpp"
#include "geolike/fixtures.hpp"
#include "geolike/solver.hpp"
#include "gradcheck.hpp"
#include "ld_energy.hpp"

using namespace geolike;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

template <class S>
std::shared_ptr<const Surface> share(S s) {
  return std::make_shared<const Surface>(std::move(s));
}

ProblemSpec problem(std::shared_ptr<const Surface> s, BoundaryCurve c1, BoundaryCurve c2, int order = 11) {
  ProblemSpec p;
  p.surface = std::move(s);
  p.c1 = std::move(c1);
  p.c2 = std::move(c2);
  p.order = order;
  return p;
}

ProblemSpec problem(const fixtures::Scenario& f, int order = 11) { return problem(f.surface, f.c1, f.c2, order); }

BoundaryCurve pt(double u, double v) { return BoundaryCurve::point({u, v}); }

// Collects failures of one criterion with a short explanation each.
struct Verdict {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

// ---------------------------------------------------------------------------

void gradients(Verdict& v) {
  const auto t0 = Clock::now();
  std::mt19937 rng(20240611);
  int configs = 0, bad = 0;
  double worst = 0.0, worst_tiny = 0.0;
  for (const gradcheck::Sample& s : gradcheck::samples()) {
    for (Mode mode : {Mode::two_points, Mode::point_curve, Mode::two_curves}) {
      for (int k = 0; k < 10; ++k) {
        const gradcheck::Config c = gradcheck::random_config(s, mode, rng);
        const EnergyModel model(*c.surface, c.c1, c.c2, c.knots);
        const gradcheck::Mismatch m = gradcheck::compare(model.gradient(c.dof), oracle::gradient_ld(model, c.dof));
        ++configs;
        if (!m.ok()) ++bad;
        worst = std::max(worst, m.worst_rel);
        worst_tiny = std::max(worst_tiny, m.worst_abs_tiny);
      }
    }
  }
  const double secs = since(t0);
  v.require(configs >= 200, "config count");
  v.require(bad == 0, std::to_string(bad) + " configs over tolerance");
  v.require(secs < 30.0, "runtime");
  v.note(std::to_string(configs) + " configs, worst rel " + num(worst) + ", worst tiny abs " + num(worst_tiny) +
         ", " + num(secs) + " s");
}

void analytic_recovery(Verdict& v) {
  struct Case {
    std::string name;
    ProblemSpec p;
    double exact, tol;
  };
  const double b = std::acos(std::tan(0.3) * std::tan(0.2));
  const std::vector<Case> cases = {
      {"plane", problem(share(AnalyticSurface::plane()), pt(-1, 0.5), pt(2, 4.5)), 5.0, 1e-10},
      {"sphere 90deg", problem(share(AnalyticSurface::sphere(1.0)), pt(0, 0.3), pt(b, -0.2), 20), pi / 2, 1e-5},
      {"cylinder", problem(share(AnalyticSurface::cylinder(1.0, 3.0)), pt(0, 0.5), pt(pi / 2, 1.5), 20),
       std::sqrt(pi * pi / 4 + 1), 1e-5},
  };
  for (const Case& c : cases) {
    const auto t0 = Clock::now();
    const SolveReport r = solve_distance(c.p, SolverConfig{});
    const double secs = since(t0);
    const double err = std::abs(r.length - c.exact);
    v.require(err < c.tol, c.name + " length");
    v.require(secs < 5.0, c.name + " time");
    v.note(c.name + " |L-L*| " + num(err) + " in " + num(secs) + " s");
  }
}

void periodic_unrolling(Verdict& v) {
  const auto cyl = share(AnalyticSurface::cylinder(1.0, 3.0));
  const ProblemSpec p = problem(cyl, pt(0, 1.0), pt(1.5 * pi, 1.5), 20);
  const CandidateSolutions all = solve_candidates(p, SolverConfig{});
  const SolveReport r = pick_winner(all);
  const double wrapped = std::sqrt(pi * pi / 4 + 0.25);
  v.require(r.candidate_index != 0, "cylinder picked the unshifted candidate");
  v.require(std::abs(r.length - wrapped) < 1e-5, "cylinder wrapped length");
  v.note("cylinder winner " + std::to_string(r.candidate_index) + " of " + std::to_string(all.problems.size()) +
         ", |L-L*| " + num(std::abs(r.length - wrapped)));

  const fixtures::Scenario t = fixtures::torus_parallel_circles();
  const CandidateSolutions tor = solve_candidates(problem(t), SolverConfig{});
  const SolveReport tw = pick_winner(tor);
  v.require(tor.problems.size() == 4, "torus candidate count");
  std::string lengths;
  for (const SolveReport& c : tor.reports) {
    if (c.converged) v.require(tw.length <= c.length, "torus winner not shortest");
    lengths += (lengths.empty() ? "" : " ") + (c.converged ? num(c.length) : std::string("x"));
  }
  v.note("torus " + std::to_string(tor.problems.size()) + " candidates [" + lengths + "], winner " +
         std::to_string(tw.candidate_index));
}

// Runs the CLI commands on scene files, as a user would.
void oracle_dominance(Verdict& v) {
  const fs::path dir = fs::temp_directory_path() / ("geolike_accept_" + std::to_string(std::random_device{}()));
  std::ostringstream sink, serr;
  if (cli::cmd_scenes(dir.string(), sink, serr) != cli::kOk) {
    v.require(false, "writing scenes: " + serr.str());
    return;
  }
  std::vector<fixtures::Scenario> fx = fixtures::all();
  fx.push_back(fixtures::plane_crossing());
  for (const fixtures::Scenario& f : fx) {
    const std::string scene = (dir / (f.name + ".json")).string();
    cli::SolveArgs sa;
    sa.scene = scene;
    sa.from = f.c1_name;
    sa.to = f.c2_name;
    std::ostringstream so, se;
    const int sc = cli::cmd_solve(sa, so, se);
    cli::OracleArgs oa;
    oa.scene = scene;
    oa.from = f.c1_name;
    oa.to = f.c2_name;
    std::ostringstream oo, oe;
    const int oc = cli::cmd_oracle(oa, oo, oe);
    if (sc != cli::kOk || oc != cli::kOk) {
      v.require(false, f.name + " command failed: " + se.str() + oe.str());
      continue;
    }
    const auto sj = nlohmann::json::parse(so.str());
    const auto oj = nlohmann::json::parse(oo.str());
    double solve_secs = 0.0;
    std::sscanf(se.str().c_str(), "# solve wall time %lf", &solve_secs);
    const double ls = sj["length"].get<double>(), lo = oj["length"].get<double>();
    const double oracle_secs = oj["wall_time_s"].get<double>();
    v.require(ls <= lo + 1e-6, f.name + " solve longer than oracle");
    v.require(oracle_secs > solve_secs, f.name + " oracle not slower");
    v.note(f.name + ": solve " + num(ls) + " (" + num(solve_secs) + " s) oracle " + num(lo) + " (" +
           num(oracle_secs) + " s, " + std::to_string(oj["failures"].get<int>()) + " failed pairs)");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
}

void order_convergence(Verdict& v) {
  const fixtures::Scenario f = fixtures::helical_strips();
  const std::vector<SolveReport> reps = refine_order(problem(f), SolverConfig{}, {5, 10, 20, 40, 60});
  double prev = INFINITY;
  std::string row;
  for (const SolveReport& r : reps) {
    v.require(r.converged, "order " + std::to_string(r.order) + " converged");
    const double e = error_percent(r.length, *f.reference);
    v.require(e <= prev, "error increased at order " + std::to_string(r.order));
    prev = e;
    row += " " + std::to_string(r.order) + ":" + num(e);
  }
  v.require(prev < 1e-5, "order 60 error");
  v.note(f.name + " error_percent" + row);
}

void orthogonality(Verdict& v) {
  auto check = [&](const fixtures::Scenario& f, int order, double tol) {
    const SolveReport r = solve_distance(problem(f, order), SolverConfig{});
    const EndpointAngles a = endpoint_orthogonality(*f.surface, r, f.c1, f.c2);
    const double dev = std::max(std::abs(a.start_deg - 90.0), std::abs(a.end_deg - 90.0));
    v.require(dev < tol, f.name + " angle");
    v.note(f.name + " max |angle-90| " + num(dev) + " deg");
  };
  check(fixtures::plane_concentric_circles(), 11, 1e-3);
  check(fixtures::cylinder_parallel_circles(), 11, 1e-3);
  check(fixtures::torus_parallel_circles(), 40, 0.1);
}

// The path may meet c1 and c2 only at its two endpoints.
bool endpoints_only(const ProblemSpec& p, const SolveReport& r) {
  if (!r.curve || !interior_contacts(p, *r.curve).empty()) return false;
  const Vec2 a = r.curve->eval(0.0), b = r.curve->eval(1.0);
  return (a - p.c1.eval(r.s)).norm() < 1e-9 && (b - p.c2.eval(r.t)).norm() < 1e-9;
}

void trimming(Verdict& v) {
  const fixtures::Scenario f = fixtures::plane_crossing();
  const ProblemSpec p = problem(f);
  // a start on the far side of the disk: the straight path crosses it
  const KnotVector k = p.knots();
  const Vec2 a = p.c1.eval(0.5), b = p.c2.eval(0.5);
  std::vector<Vec2> ctrl;
  for (double g : k.greville()) ctrl.push_back(a + g * (b - a));
  const SolveReport raw = solve_newton(p, pack_dofs(p.layout(), 0.5, 0.5, ctrl), SolverConfig{});
  const std::size_t before = raw.curve ? interior_contacts(p, *raw.curve).size() : 0;
  v.require(before > 0, "crossing start has contacts");
  const SolveReport t = trim_and_resolve(p, raw, SolverConfig{});
  v.require(t.converged, "trimmed solve converged");
  v.require(t.trim_rounds <= 8, "round count");
  v.require(endpoints_only(p, t), "trimmed path meets the boundaries only at its endpoints");
  v.note("forced crossing: " + std::to_string(before) + " contacts, " + std::to_string(t.trim_rounds) +
         " rounds, L " + num(t.length) + " (gap " + num(*f.reference) + ")");

  const SolveReport full = solve_distance(p, SolverConfig{});
  const ProblemSpec won = periodic_candidates(p)[std::size_t(full.candidate_index)];
  v.require(full.trim_rounds <= 8 && endpoints_only(won, full), "full pipeline");
  v.note("full pipeline: " + std::to_string(full.trim_rounds) + " rounds, L " + num(full.length));
}

void residuals(Verdict& v) {
  const auto sphere = share(AnalyticSurface::sphere(1.0));
  const auto torus = share(AnalyticSurface::torus(2.0, 0.5));
  const auto cyl = share(AnalyticSurface::cylinder(1.0, 3.0));
  const double b = std::acos(std::tan(0.3) * std::tan(0.2));
  const std::vector<std::pair<std::string, ProblemSpec>> cases = {
      {"plane circles", problem(fixtures::plane_concentric_circles())},
      {"sphere 90deg", problem(sphere, pt(0, 0.3), pt(b, -0.2))},
      {"cylinder points", problem(cyl, pt(0, 0.5), pt(pi / 2, 1.5))},
      {"cylinder circles", problem(fixtures::cylinder_parallel_circles())},
      {"torus points", problem(torus, pt(0.3, 0.4), pt(1.0, 1.0))},
      {"torus circles", problem(fixtures::torus_parallel_circles())},
      {"revolution strips", problem(fixtures::helical_strips())},
      {"revolution bump", problem(fixtures::revolution_bump())},
  };
  // residuals at round-off level carry no trend
  constexpr double kFloor = 1e-9;
  for (const auto& [name, p] : cases) {
    const std::vector<SolveReport> reps = refine_order(p, SolverConfig{});
    double prev = INFINITY;
    std::string row;
    for (const SolveReport& r : reps) {
      if (!r.converged) {
        row += " " + std::to_string(r.order) + ":x";
        v.require(r.order != 40, name + " order 40 did not converge");
        continue;
      }
      const double res = geodesic_residual(*p.surface, *r.curve, span_midpoints(r.curve->knots()));
      if (r.order == 40) v.require(res < 1e-3, name + " order-40 residual");
      v.require(res < kFloor || res <= prev + 1e-12, name + " residual rose at order " + std::to_string(r.order));
      prev = res;
      row += " " + std::to_string(r.order) + ":" + num(res);
    }
    v.note(name + row);
  }
}

void mode_reductions(Verdict& v) {
  const double b = std::acos(std::tan(0.3) * std::tan(0.2));
  const auto sphere = share(AnalyticSurface::sphere(1.0));
  auto constant = [](const Vec2& p) {
    return BoundaryCurve::spline(BSplineCurve2({p, p, p}, KnotVector::clamped_uniform(2, 3)), false);
  };
  const SolveReport points = solve_distance(problem(sphere, pt(0, 0.3), pt(b, -0.2)), SolverConfig{});
  const SolveReport curves =
      solve_distance(problem(sphere, constant({0, 0.3}), constant({b, -0.2})), SolverConfig{});
  const double d = std::abs(points.length - curves.length);
  v.require(curves.mode == Mode::two_curves && d < 1e-10, "constant curves vs points");
  v.note("two_curves vs two_points diff " + num(d));

  const auto plane = share(AnalyticSurface::plane());
  const BoundaryCurve line = BoundaryCurve::segment({-3, -1}, {3, 2});
  const Vec2 dir = Vec2(6, 3).normalized();
  double worst = 0.0;
  for (const Vec2& q : {Vec2(0.5, 2.0), Vec2(-1.0, -2.0), Vec2(2.0, 0.0)}) {
    const Vec2 rel = q - Vec2(-3, -1);
    const double exact = std::abs(rel.x() * dir.y() - rel.y() * dir.x());
    worst = std::max(worst, std::abs(solve_distance(problem(plane, pt(q.x(), q.y()), line), SolverConfig{}).length -
                                     exact));
  }
  const BoundaryCurve circle = BoundaryCurve::circle({1, 1}, 0.5);
  for (const Vec2& q : {Vec2(2.5, 1.7), Vec2(1.1, 1.2), Vec2(-1, -1)}) {
    const double exact = std::abs((q - Vec2(1, 1)).norm() - 0.5);
    worst = std::max(worst,
                     std::abs(solve_distance(problem(plane, pt(q.x(), q.y()), circle), SolverConfig{}).length - exact));
  }
  v.require(worst < 1e-8, "plane projection");
  v.note("plane projection worst error " + num(worst));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"gradient correctness", gradients},
      {"analytic geodesic recovery", analytic_recovery},
      {"periodic unrolling", periodic_unrolling},
      {"oracle dominance", oracle_dominance},
      {"order convergence", order_convergence},
      {"endpoint orthogonality", orthogonality},
      {"trimming loop", trimming},
      {"residual check", residuals},
      {"mode reductions", mode_reductions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  %zu %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const std::string& n : v.notes) std::printf("        %s\n", n.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
