#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geolike/solver.hpp"
#include "geolike/types.hpp"

namespace geolike::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericalFailure = 3, kTrimFailure = 4 };

struct SolveArgs {
  std::string scene;
  std::string from;
  std::string to;
  int order = 11;
  SolverConfig cfg;
  std::string out_dir;  // empty: summary only
};

struct ProjectArgs {
  std::string scene;
  Vec2 point = Vec2::Zero();
  std::string onto;
  int order = 11;
  SolverConfig cfg;
};

struct ConvergeArgs {
  std::string scene;
  std::string from;
  std::string to;
  std::vector<int> orders{5, 10, 20, 40, 60};
  SolverConfig cfg;
  std::optional<double> reference;  // otherwise analytic when possible, else the last order
  std::string out;                  // optional copy of the table
};

struct OracleArgs {
  std::string scene;
  std::string from;
  std::string to;
  int m = 16;
  int n = 16;
  int order = 11;
  SolverConfig cfg;
};

/// Each command writes its record to `out` and returns an exit code. Failures
/// write a one-line JSON error record to `err`.
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_project(const ProjectArgs& args, std::ostream& out, std::ostream& err);
int cmd_converge(const ConvergeArgs& args, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

/// Write the bundled example scenes as <dir>/<name>.json, or just list them.
int cmd_scenes(const std::string& dir, std::ostream& out, std::ostream& err);

/// %.17g, with "null" for non-finite values.
std::string fmt(double x);

/// SVG of the parameter plane: base domain, boundary curves, every periodic
/// candidate (class "candidate") and the winner (class "winner").
std::string candidate_plot(const CandidateSolutions& all, const Surface& surface);

/// `count` points of the path mapped to R^3, one "x y z" line each.
std::string polyline_xyz(const Surface& surface, const BSplineCurve2& curve, int count = 256);

}  // namespace geolike::cli
