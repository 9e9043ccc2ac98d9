// geolike: shortest paths between curves on parametric surfaces.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace geolike;

namespace {

void solver_flags(CLI::App* app, SolverConfig& cfg) {
  app->add_option("--grad-tol", cfg.grad_tol, "gradient norm tolerance")->capture_default_str();
  app->add_option("--step-tol", cfg.step_tol, "relative step tolerance")->capture_default_str();
  app->add_option("--max-iters", cfg.max_iters, "Newton iteration limit")->capture_default_str();
  app->add_option("--armijo-slope", cfg.armijo.slope)->capture_default_str();
  app->add_option("--armijo-backtrack", cfg.armijo.backtrack)->capture_default_str();
  app->add_option("--max-backtracks", cfg.armijo.max_backtracks)->capture_default_str();
  app->add_option("--trim-max-rounds", cfg.trim_max_rounds)->capture_default_str();
  app->add_option("--fd-hessian-step", cfg.fd_hessian_step)->capture_default_str();
}

// "u,v" -> Vec2
bool parse_point(const std::string& s, Vec2& p) {
  std::istringstream in(s);
  char comma = 0;
  double u, v;
  if (!(in >> u >> comma >> v) || comma != ',') return false;
  in >> std::ws;
  if (!in.eof()) return false;
  p = Vec2(u, v);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic-like curves between boundary curves on NURBS and analytic surfaces"};
  app.require_subcommand(1);

  cli::SolveArgs solve;
  auto* s = app.add_subcommand("solve", "shortest path between two named curves");
  s->add_option("scene", solve.scene, "scene file")->required();
  s->add_option("--from", solve.from, "first curve")->required();
  s->add_option("--to", solve.to, "second curve")->required();
  s->add_option("--order", solve.order, "number of control points")->capture_default_str();
  s->add_option("--out", solve.out_dir, "directory for path.xyz, candidates.svg, summary.json");
  solver_flags(s, solve.cfg);

  cli::ProjectArgs project;
  std::string point_text;
  auto* p = app.add_subcommand("project", "orthogonal projection of a parameter point onto a curve");
  p->add_option("scene", project.scene, "scene file")->required();
  p->add_option("--point", point_text, "u,v")->required();
  p->add_option("--onto", project.onto, "target curve")->required();
  p->add_option("--order", project.order)->capture_default_str();
  solver_flags(p, project.cfg);

  cli::ConvergeArgs conv;
  double reference = 0.0;
  auto* c = app.add_subcommand("converge", "length, error and residual across orders");
  c->add_option("scene", conv.scene, "scene file")->required();
  c->add_option("--from", conv.from)->required();
  c->add_option("--to", conv.to)->required();
  c->add_option("--orders", conv.orders, "increasing orders")->delimiter(',')->capture_default_str();
  auto* ref_opt = c->add_option("--reference", reference, "reference length for error_percent");
  c->add_option("--out", conv.out, "also write the table here");
  solver_flags(c, conv.cfg);

  cli::OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "brute force over digitized point pairs");
  o->add_option("scene", oracle.scene, "scene file")->required();
  o->add_option("--from", oracle.from)->required();
  o->add_option("--to", oracle.to)->required();
  o->add_option("-m", oracle.m)->capture_default_str();
  o->add_option("-n", oracle.n)->capture_default_str();
  o->add_option("--order", oracle.order)->capture_default_str();
  solver_flags(o, oracle.cfg);

  std::string scenes_dir;
  auto* sc = app.add_subcommand("scenes", "list the bundled example scenes, optionally writing them");
  sc->add_option("--out", scenes_dir, "directory to write <name>.json into");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  if (*s) return cli::cmd_solve(solve, std::cout, std::cerr);
  if (*p) {
    if (!parse_point(point_text, project.point)) {
      std::cerr << "{\"error\": \"input\", \"exit_code\": 2, \"message\": \"--point expects u,v\"}\n";
      return cli::kInputError;
    }
    return cli::cmd_project(project, std::cout, std::cerr);
  }
  if (*c) {
    if (*ref_opt) conv.reference = reference;
    return cli::cmd_converge(conv, std::cout, std::cerr);
  }
  if (*o) return cli::cmd_oracle(oracle, std::cout, std::cerr);
  return cli::cmd_scenes(scenes_dir, std::cout, std::cerr);
}
