#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "geolike/catalog.hpp"
#include "geolike/errors.hpp"
#include "geolike/fixtures.hpp"
#include "geolike/scene.hpp"

namespace geolike::cli {

namespace fs = std::filesystem;

std::string fmt(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// Flat JSON object with keys in insertion order and numbers at %.17g.
class Record {
 public:
  Record& num(const std::string& k, double v) { return raw(k, fmt(v)); }
  Record& integer(const std::string& k, long v) { return raw(k, std::to_string(v)); }
  Record& flag(const std::string& k, bool v) { return raw(k, v ? "true" : "false"); }
  Record& str(const std::string& k, const std::string& v) { return raw(k, nlohmann::json(v).dump()); }
  Record& opt(const std::string& k, const std::optional<double>& v) { return v ? num(k, *v) : raw(k, "null"); }
  Record& pair(const std::string& k, const Vec2& v) { return raw(k, "[" + fmt(v.x()) + ", " + fmt(v.y()) + "]"); }
  Record& triple(const std::string& k, const Vec3& v) {
    return raw(k, "[" + fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()) + "]");
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  Record& raw(const std::string& k, const std::string& v) {
    if (!body_.empty()) body_ += ", ";
    body_ += nlohmann::json(k).dump() + ": " + v;
    return *this;
  }
  std::string body_;
};

int fail(std::ostream& err, int code, const std::string& kind, const std::string& message) {
  err << Record().str("error", kind).integer("exit_code", code).str("message", message).str() << "\n";
  return code;
}

// Runs body and maps exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    return fail(err, kInputError, "input", e.what());
  } catch (const ContractError& e) {
    return fail(err, kInputError, "input", e.what());
  } catch (const TrimError& e) {
    return fail(err, kTrimFailure, "trim", e.what());
  } catch (const SolveError& e) {
    return fail(err, kNumericalFailure, "numerical", e.what());
  } catch (const DomainError& e) {
    return fail(err, kNumericalFailure, "numerical", e.what());
  } catch (const SingularityError& e) {
    return fail(err, kNumericalFailure, "numerical", e.what());
  } catch (const DegenerateTangentError& e) {
    return fail(err, kNumericalFailure, "numerical", e.what());
  }
}

ProblemSpec problem_for(const Scene& scene, const std::string& from, const std::string& to, int order) {
  ProblemSpec p;
  p.surface = scene.surface;
  p.c1 = scene.curve(from);
  p.c2 = scene.curve(to);
  p.order = order;
  return p;
}

std::optional<double> angle_or_null(const Surface& S, const BSplineCurve2& curve, bool at_end,
                                    const BoundaryCurve& c, double param) {
  if (c.is_point()) return std::nullopt;
  return contact_angle(S, curve, at_end, c, param);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << text;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string polyline_xyz(const Surface& surface, const BSplineCurve2& curve, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    const double x = count == 1 ? 0.0 : double(i) / (count - 1);
    const Vec3 p = surface.point(curve.eval(x));
    out += fmt(p.x()) + " " + fmt(p.y()) + " " + fmt(p.z()) + "\n";
  }
  return out;
}

std::string candidate_plot(const CandidateSolutions& all, const Surface& surface) {
  constexpr int kSamples = 200;
  std::vector<std::pair<std::string, std::vector<Vec2>>> items;
  auto sample_boundary = [&](const BoundaryCurve& c) {
    std::vector<Vec2> pts;
    if (c.is_point()) return std::vector<Vec2>{c.eval(0.0)};
    for (int i = 0; i <= kSamples; ++i) pts.push_back(c.eval(double(i) / kSamples));
    return pts;
  };
  auto sample_path = [&](const BSplineCurve2& c) {
    std::vector<Vec2> pts;
    for (int i = 0; i <= kSamples; ++i) pts.push_back(c.eval(double(i) / kSamples));
    return pts;
  };

  if (!all.problems.empty()) items.emplace_back("boundary c2", sample_boundary(all.problems.front().c2));
  for (const ProblemSpec& p : all.problems) items.emplace_back("boundary c1", sample_boundary(p.c1));
  for (std::size_t k = 0; k < all.reports.size(); ++k) {
    if (all.reports[k].curve) items.emplace_back("candidate", sample_path(*all.reports[k].curve));
  }
  if (all.winner >= 0 && all.reports[std::size_t(all.winner)].curve) {
    items.emplace_back("winner", sample_path(*all.reports[std::size_t(all.winner)].curve));
  }

  Eigen::AlignedBox2d box;
  for (const auto& it : items) {
    for (const Vec2& p : it.second) box.extend(p);
  }
  const ParamDomain d = surface.domain();
  const Eigen::AlignedBox2d dom(Vec2(d.u_lo, d.v_lo), Vec2(d.u_hi, d.v_hi));
  // small analytic domains are drawn whole; huge ones (the default plane) would swamp the picture
  if (box.isEmpty() || dom.sizes().maxCoeff() < 10.0 * std::max(box.sizes().maxCoeff(), 1e-9)) box.extend(dom);
  const double margin = 0.05 * std::max(box.sizes().maxCoeff(), 1e-9);
  box.min().array() -= margin;
  box.max().array() += margin;
  const double scale = 600.0 / box.sizes().maxCoeff();
  const double w = box.sizes().x() * scale, h = box.sizes().y() * scale;
  auto X = [&](const Vec2& p) { return (p.x() - box.min().x()) * scale; };
  auto Y = [&](const Vec2& p) { return (box.max().y() - p.y()) * scale; };

  std::ostringstream svg;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.1f\" height=\"%.1f\" viewBox=\"0 0 %.1f %.1f\">\n",
                w, h, w, h);
  svg << buf;
  svg << "<style>.domain{fill:none;stroke:#999;stroke-dasharray:4 3}"
         ".boundary{fill:none;stroke:#1f77b4;stroke-width:1.5}"
         ".candidate{fill:none;stroke:#aaa;stroke-width:1}"
         ".winner{fill:none;stroke:#d62728;stroke-width:2.5}</style>\n";
  std::snprintf(buf, sizeof buf, "<rect class=\"domain\" x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/>\n",
                X(Vec2(d.u_lo, d.v_hi)), Y(Vec2(d.u_lo, d.v_hi)), (d.u_hi - d.u_lo) * scale,
                (d.v_hi - d.v_lo) * scale);
  svg << buf;
  for (const auto& [cls, pts] : items) {
    if (pts.size() == 1) {
      std::snprintf(buf, sizeof buf, "<circle class=\"%s\" cx=\"%.3f\" cy=\"%.3f\" r=\"3\"/>\n", cls.c_str(),
                    X(pts[0]), Y(pts[0]));
      svg << buf;
      continue;
    }
    svg << "<polyline class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", X(pts[i]), Y(pts[i]));
      svg << buf;
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(args.scene);
    const ProblemSpec problem = problem_for(scene, args.from, args.to, args.order);
    const auto t0 = std::chrono::steady_clock::now();
    const CandidateSolutions all = solve_candidates(problem, args.cfg);
    const SolveReport r = pick_winner(all);
    const double elapsed = seconds_since(t0);
    const ProblemSpec& won = all.problems[std::size_t(all.winner)];

    std::optional<double> a1, a2;
    if (!r.zero_distance) {
      a1 = angle_or_null(*problem.surface, *r.curve, false, won.c1, r.s);
      a2 = angle_or_null(*problem.surface, *r.curve, true, won.c2, r.t);
    }
    const std::string summary = Record()
                                    .str("command", "solve")
                                    .str("mode", to_string(r.mode))
                                    .integer("order", r.order)
                                    .num("length", r.length)
                                    .num("energy", r.energy)
                                    .num("grad_norm", r.grad_norm)
                                    .integer("iterations", r.iterations)
                                    .integer("trim_rounds", r.trim_rounds)
                                    .integer("candidate_index", r.candidate_index)
                                    .integer("candidates", long(all.problems.size()))
                                    .num("s", r.s)
                                    .num("t", r.t)
                                    .opt("angle_start_deg", a1)
                                    .opt("angle_end_deg", a2)
                                    .flag("converged", r.converged)
                                    .flag("saddle", r.saddle)
                                    .flag("zero_distance", r.zero_distance)
                                    .str();
    out << summary << "\n";
    if (!args.out_dir.empty()) {
      fs::create_directories(args.out_dir);
      const fs::path dir(args.out_dir);
      write_file(dir / "summary.json", summary + "\n");
      write_file(dir / "path.xyz", polyline_xyz(*problem.surface, *r.curve));
      write_file(dir / "candidates.svg", candidate_plot(all, *problem.surface));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "# solve wall time %.6f s\n", elapsed);
    err << buf;
    return int(kOk);
  });
}

int cmd_project(const ProjectArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(args.scene);
    ProblemSpec problem;
    problem.surface = scene.surface;
    problem.c1 = BoundaryCurve::point(args.point);
    problem.c2 = scene.curve(args.onto);
    problem.order = args.order;
    const CandidateSolutions all = solve_candidates(problem, args.cfg);
    const SolveReport r = pick_winner(all);
    const ProblemSpec& won = all.problems[std::size_t(all.winner)];
    const Vec2 foot = problem.c2.eval(r.t);
    const std::optional<double> angle =
        r.zero_distance ? std::nullopt : angle_or_null(*problem.surface, *r.curve, true, won.c2, r.t);
    out << Record()
               .str("command", "project")
               .pair("point", args.point)
               .pair("foot", foot)
               .triple("foot_xyz", problem.surface->point(foot))
               .num("t", r.t)
               .num("distance", r.length)
               .opt("angle_deg", angle)
               .integer("iterations", r.iterations)
               .integer("candidate_index", r.candidate_index)
               .flag("converged", r.converged)
               .str()
        << "\n";
    return int(kOk);
  });
}

int cmd_converge(const ConvergeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(args.scene);
    if (args.orders.empty()) throw InputError("no orders given");
    const ProblemSpec problem = problem_for(scene, args.from, args.to, args.orders.front());
    problem.validate();
    const std::vector<SolveReport> reps = refine_order(problem, args.cfg, args.orders);

    std::optional<double> ref = args.reference;
    std::string ref_kind = "given";
    if (!ref && problem.c1.is_point() && problem.c2.is_point()) {
      if (const AnalyticSurface* a = problem.surface->analytic()) {
        ref = analytic_distance(*a, problem.c1.eval(0.0), problem.c2.eval(0.0));
        ref_kind = "analytic";
      }
    }
    if (!ref) {
      for (auto it = reps.rbegin(); it != reps.rend(); ++it) {
        if (it->converged) {
          ref = it->length;
          ref_kind = "order " + std::to_string(it->order);
          break;
        }
      }
    }

    std::ostringstream table;
    table << "# reference " << (ref ? fmt(*ref) : std::string("none")) << " (" << ref_kind << ")\n";
    table << "order length error_percent iterations residual\n";
    for (const SolveReport& r : reps) {
      if (!r.converged || !r.curve) {
        table << r.order << " failed failed " << r.iterations << " failed  # " << r.message << "\n";
        continue;
      }
      std::string residual;
      try {
        residual = fmt(geodesic_residual(*problem.surface, *r.curve, span_midpoints(r.curve->knots())));
      } catch (const SingularityError&) {
        residual = "singular";
      }
      const std::string err_pct = ref && *ref > 0.0 ? fmt(error_percent(r.length, *ref)) : std::string("null");
      table << r.order << " " << fmt(r.length) << " " << err_pct << " " << r.iterations << " " << residual << "\n";
    }
    out << table.str();
    if (!args.out.empty()) write_file(args.out, table.str());
    bool any = false;
    for (const SolveReport& r : reps) any = any || r.converged;
    return any ? int(kOk) : int(kNumericalFailure);
  });
}

int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(args.scene);
    const BoundaryCurve& c1 = scene.curve(args.from);
    const BoundaryCurve& c2 = scene.curve(args.to);
    if (args.m < 1 || args.n < 1) throw InputError("m and n must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    const BruteForceResult bf = brute_force_distance(scene.surface, c1, c2, args.m, args.n, args.cfg, args.order);
    const double elapsed = seconds_since(t0);
    out << Record()
               .str("command", "oracle")
               .integer("m", args.m)
               .integer("n", args.n)
               .num("length", bf.length)
               .integer("i", bf.i)
               .integer("j", bf.j)
               .integer("pairs", bf.pairs)
               .integer("failures", bf.failures)
               .num("wall_time_s", elapsed)
               .str()
        << "\n";
    return int(kOk);
  });
}

int cmd_scenes(const std::string& dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto scenes = fixtures::example_scenes();
    if (!dir.empty()) fs::create_directories(dir);
    for (const auto& [name, scene] : scenes) {
      std::string curves;
      for (const auto& [cname, c] : scene.curves) curves += (curves.empty() ? "" : ", ") + cname;
      out << name << ": " << curves << "\n";
      if (!dir.empty()) save_scene(scene, (fs::path(dir) / (name + ".json")).string());
    }
    return int(kOk);
  });
}

}  // namespace geolike::cli
