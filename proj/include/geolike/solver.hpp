#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geolike/boundary.hpp"
#include "geolike/energy.hpp"
#include "geolike/errors.hpp"
#include "geolike/surface.hpp"

namespace geolike {

/// Every candidate that converged only by failing to trim.
class TrimError : public SolveError {
 public:
  using SolveError::SolveError;
};

struct ArmijoParams {
  double slope = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;
};

struct SolverConfig {
  double grad_tol = 1e-10;
  double step_tol = 1e-12;
  int max_iters = 200;
  ArmijoParams armijo;
  int trim_max_rounds = 8;
  double fd_hessian_step = 1e-6;

  /// Throws ContractError on non-positive tolerances or a ratio outside (0, 1).
  void validate() const;
};

/// A shortest-path problem between c1 and c2 on a surface, discretized by a
/// clamped uniform B-spline with `order` control points.
struct ProblemSpec {
  std::shared_ptr<const Surface> surface;
  BoundaryCurve c1 = BoundaryCurve::point(Vec2::Zero());
  BoundaryCurve c2 = BoundaryCurve::point(Vec2::Zero());
  int order = 11;
  int degree = 2;
  /// Set by periodic_candidates: which translated copy of c1 this is.
  int candidate_index = 0;
  Vec2 candidate_shift = Vec2::Zero();

  Mode mode() const;
  KnotVector knots() const;
  DofLayout layout() const;
  ProblemSpec with_order(int new_order) const;
  /// Throws ContractError when the problem is malformed.
  void validate() const;
};

struct SolveReport {
  std::optional<BSplineCurve2> curve;
  DofVector dof;
  Mode mode = Mode::two_points;
  int order = 0;
  double length = 0.0;
  double energy = 0.0;
  double initial_energy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int trim_rounds = 0;
  int candidate_index = 0;
  Vec2 candidate_shift = Vec2::Zero();
  /// Contact parameters on c1 and c2, reduced to [0, 1).
  double s = 0.0;
  double t = 0.0;
  bool converged = false;
  /// The local-minimum spot check found a descent direction.
  bool saddle = false;
  bool trim_failed = false;
  /// c1 and c2 intersect; length is 0 and no path was solved.
  bool zero_distance = false;
  std::string message;
};

/// Starting guess: endpoints from a 32 x 32 grid search on the ambient
/// chord, interior controls on the straight parameter segment between them.
DofVector initialize(const ProblemSpec& problem);

/// Damped Newton on grad E = 0 with a finite-difference Hessian of the
/// analytic gradient and Armijo backtracking on E.
SolveReport solve_newton(const ProblemSpec& problem, const DofVector& init, const SolverConfig& cfg);

/// Interior contacts of the report's curve with c1 and c2, as (x, curve 1|2, boundary parameter).
struct Contact {
  double x;
  int which;
  double param;
};
std::vector<Contact> interior_contacts(const ProblemSpec& problem, const BSplineCurve2& curve);

/// While the path meets c1 or c2 away from its endpoints,
/// keep the longest contact-free piece running from c1 to c2, refit and re-solve.
SolveReport trim_and_resolve(const ProblemSpec& problem, const SolveReport& report,
                             const SolverConfig& cfg);

/// Translated copies of c1 in the unrolled parameter plane: 1, 2 or 4 problems.
std::vector<ProblemSpec> periodic_candidates(const ProblemSpec& problem);

struct CandidateSolutions {
  std::vector<ProblemSpec> problems;
  std::vector<SolveReport> reports;
  int winner = -1;
};

/// initialize -> solve_newton -> trim_and_resolve for every periodic candidate.
CandidateSolutions solve_candidates(const ProblemSpec& problem, const SolverConfig& cfg);

/// Shortest converged candidate. Throws SolveError (TrimError when trimming
/// was the cause) if none converged.
SolveReport solve_distance(const ProblemSpec& problem, const SolverConfig& cfg);

/// The winner of an already solved candidate set, with the same errors as solve_distance.
SolveReport pick_winner(const CandidateSolutions& all);

/// Solve at each order of `schedule`, warm-starting from the previous one.
/// A failed order yields a report with converged == false and a message.
std::vector<SolveReport> refine_order(const ProblemSpec& problem, const SolverConfig& cfg,
                                      const std::vector<int>& schedule = {5, 10, 20, 40, 60});

struct BruteForceResult {
  double length = 0.0;
  int i = -1;
  int j = -1;
  int pairs = 0;
  int failures = 0;
};

/// Brute-force oracle: digitize c1 and c2 into m and n points and solve every
/// point-to-point problem; the minimum is the answer.
BruteForceResult brute_force_distance(std::shared_ptr<const Surface> surface, const BoundaryCurve& c1,
                                      const BoundaryCurve& c2, int m, int n, const SolverConfig& cfg,
                                      int order = 11);

struct EndpointAngles {
  double start_deg = 0.0;
  double end_deg = 0.0;
};

/// Angle in R^3 between the path tangent at its start (or end) and the
/// tangent of boundary c at parameter `param`, in degrees.
double contact_angle(const Surface& surface, const BSplineCurve2& curve, bool at_end, const BoundaryCurve& c,
                     double param);

/// Angles in R^3 between the path's end tangents and the boundary tangents at
/// the contacts. Throws DegenerateTangentError when a tangent vanishes.
EndpointAngles endpoint_orthogonality(const Surface& surface, const SolveReport& report,
                                      const BoundaryCurve& c1, const BoundaryCurve& c2);

/// Least-squares fit of a path with the problem's order to `source(y)`,
/// y in [0, 1], with the end controls pinned to c1(s) and c2(t).
DofVector fit_dofs(const ProblemSpec& problem, const std::function<Vec2(double)>& source, double s,
                   double t);

/// Do c1 and c2 touch in the parameter plane.
bool curves_intersect(const BoundaryCurve& c1, const BoundaryCurve& c2);

}  // namespace geolike
