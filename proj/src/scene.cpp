#include "geolike/scene.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geolike/errors.hpp"

namespace geolike {

using json = nlohmann::ordered_json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing '" + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <int N>
Eigen::Matrix<double, N, 1> point(const json& j, const std::string& where) {
  const std::vector<double> v = numbers(j, where);
  if (int(v.size()) != N) throw InputError(where + ": expected " + std::to_string(N) + " coordinates");
  Eigen::Matrix<double, N, 1> p;
  for (int i = 0; i < N; ++i) p[i] = v[std::size_t(i)];
  return p;
}

BSplineCurve2 read_bspline(const json& j, const std::string& where) {
  const int degree = integer(field(j, "degree", where), where + ".degree");
  const json& cj = field(j, "controls", where);
  if (!cj.is_array()) throw InputError(where + ".controls: expected an array");
  std::vector<Vec2> ctrl;
  for (std::size_t i = 0; i < cj.size(); ++i) ctrl.push_back(point<2>(cj[i], where + ".controls[" + std::to_string(i) + "]"));
  KnotVector knots(numbers(field(j, "knots", where), where + ".knots"), degree);
  std::vector<double> w;
  if (j.contains("weights")) w = numbers(j.at("weights"), where + ".weights");
  return BSplineCurve2(std::move(ctrl), std::move(knots), std::move(w));
}

json write_bspline(const BSplineCurve2& c) {
  json j;
  j["degree"] = c.degree();
  json ctrl = json::array();
  for (const Vec2& p : c.control()) ctrl.push_back({p.x(), p.y()});
  j["controls"] = ctrl;
  j["knots"] = c.knots().values();
  if (c.rational()) j["weights"] = c.weights();
  return j;
}

Surface read_surface(const json& j) {
  const std::string where = "surface";
  if (j.contains("analytic")) {
    const json& a = j.at("analytic");
    const std::string w = where + ".analytic";
    const std::string kind = field(a, "kind", w).is_string() ? a.at("kind").get<std::string>() : "";
    SurfaceKind k;
    try {
      k = surface_kind_from_string(kind);
    } catch (const ContractError& e) {
      throw InputError(w + ".kind: " + e.what());
    }
    switch (k) {
      case SurfaceKind::plane: {
        if (!a.contains("domain")) return AnalyticSurface::plane();
        const std::vector<double> d = numbers(a.at("domain"), w + ".domain");
        if (d.size() != 4) throw InputError(w + ".domain: expected [u0, u1, v0, v1]");
        return AnalyticSurface::plane({d[0], d[1], d[2], d[3]});
      }
      case SurfaceKind::sphere: return AnalyticSurface::sphere(number(field(a, "radius", w), w + ".radius"));
      case SurfaceKind::cylinder:
        return AnalyticSurface::cylinder(number(field(a, "radius", w), w + ".radius"),
                                         number(field(a, "height", w), w + ".height"));
      case SurfaceKind::torus:
        return AnalyticSurface::torus(number(field(a, "major_radius", w), w + ".major_radius"),
                                      number(field(a, "minor_radius", w), w + ".minor_radius"));
      case SurfaceKind::revolution:
        return AnalyticSurface::revolution(read_bspline(field(a, "profile", w), w + ".profile"));
    }
  }
  if (j.contains("nurbs")) {
    const json& n = j.at("nurbs");
    const std::string w = where + ".nurbs";
    const int du = integer(field(n, "degree_u", w), w + ".degree_u");
    const int dv = integer(field(n, "degree_v", w), w + ".degree_v");
    KnotVector ku(numbers(field(n, "knots_u", w), w + ".knots_u"), du);
    KnotVector kv(numbers(field(n, "knots_v", w), w + ".knots_v"), dv);
    const int cu = integer(field(n, "count_u", w), w + ".count_u");
    const int cv = integer(field(n, "count_v", w), w + ".count_v");
    if (cu != ku.basis_count() || cv != kv.basis_count()) {
      throw InputError(w + ": count_u/count_v do not match the knot vectors");
    }
    const json& cj = field(n, "control", w);
    if (!cj.is_array()) throw InputError(w + ".control: expected an array");
    std::vector<Vec3> net;
    for (std::size_t i = 0; i < cj.size(); ++i) net.push_back(point<3>(cj[i], w + ".control[" + std::to_string(i) + "]"));
    std::vector<double> weights = n.contains("weights") ? numbers(n.at("weights"), w + ".weights")
                                                         : std::vector<double>(net.size(), 1.0);
    Periodicity per;
    per.u = n.value("periodic_u", false);
    per.v = n.value("periodic_v", false);
    if (per.u) per.period_u = ku.back() - ku.front();
    if (per.v) per.period_v = kv.back() - kv.front();
    return NurbsSurface(std::move(net), std::move(weights), std::move(ku), std::move(kv), per);
  }
  throw InputError("surface: expected 'analytic' or 'nurbs'");
}

json write_surface(const Surface& s) {
  json j;
  if (const AnalyticSurface* a = s.analytic()) {
    json k;
    k["kind"] = to_string(a->kind());
    switch (a->kind()) {
      case SurfaceKind::plane: {
        const ParamDomain d = a->domain();
        k["domain"] = {d.u_lo, d.u_hi, d.v_lo, d.v_hi};
        break;
      }
      case SurfaceKind::sphere: k["radius"] = a->radius(); break;
      case SurfaceKind::cylinder:
        k["radius"] = a->radius();
        k["height"] = a->height();
        break;
      case SurfaceKind::torus:
        k["major_radius"] = a->major_radius();
        k["minor_radius"] = a->minor_radius();
        break;
      case SurfaceKind::revolution: k["profile"] = write_bspline(*a->profile()); break;
    }
    j["analytic"] = k;
    return j;
  }
  const NurbsSurface& n = *s.nurbs();
  json k;
  k["degree_u"] = n.knots_u().degree();
  k["degree_v"] = n.knots_v().degree();
  k["knots_u"] = n.knots_u().values();
  k["knots_v"] = n.knots_v().values();
  k["count_u"] = n.count_u();
  k["count_v"] = n.count_v();
  json net = json::array();
  for (const Vec3& p : n.control_net()) net.push_back({p.x(), p.y(), p.z()});
  k["control"] = net;
  if (n.rational()) k["weights"] = n.weights();
  k["periodic_u"] = n.periodicity().u;
  k["periodic_v"] = n.periodicity().v;
  j["nurbs"] = k;
  return j;
}

BoundaryCurve read_curve(const json& j, const std::string& where) {
  if (j.contains("point")) return BoundaryCurve::point(point<2>(j.at("point"), where + ".point"));
  if (j.contains("bspline")) {
    const json& b = j.at("bspline");
    return BoundaryCurve::spline(read_bspline(b, where + ".bspline"), b.value("closed", false));
  }
  if (j.contains("circle")) {
    const json& c = j.at("circle");
    return BoundaryCurve::circle(point<2>(field(c, "center", where), where + ".circle.center"),
                                 number(field(c, "radius", where), where + ".circle.radius"));
  }
  if (j.contains("segment")) {
    const json& c = j.at("segment");
    return BoundaryCurve::segment(point<2>(field(c, "from", where), where + ".segment.from"),
                                  point<2>(field(c, "to", where), where + ".segment.to"), c.value("closed", false));
  }
  throw InputError(where + ": expected 'point', 'bspline', 'circle' or 'segment'");
}

json write_curve(const BoundaryCurve& c) {
  json j;
  if (c.is_point()) {
    const Vec2 p = c.eval(0.0);
    j["point"] = {p.x(), p.y()};
    return j;
  }
  json b = write_bspline(*c.curve());
  b["closed"] = c.closed();
  j["bspline"] = b;
  return j;
}

}  // namespace

const BoundaryCurve& Scene::curve(const std::string& name) const {
  auto it = curves.find(name);
  if (it == curves.end()) throw InputError("scene has no curve named '" + name + "'");
  return it->second;
}

bool Scene::operator==(const Scene& other) const {
  if (!surface || !other.surface) return surface == other.surface && curves == other.curves;
  return *surface == *other.surface && curves == other.curves;
}

Scene parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scene is not valid JSON: ") + e.what());
  }
  Scene scene;
  scene.surface = std::make_shared<const Surface>(read_surface(field(j, "surface", "scene")));
  const json& cj = field(j, "curves", "scene");
  if (!cj.is_object()) throw InputError("curves: expected an object of named curves");
  for (const auto& [name, value] : cj.items()) {
    BoundaryCurve c = read_curve(value, "curves." + name);
    const std::vector<Vec2> pts = c.is_point() ? std::vector<Vec2>{c.eval(0.0)} : c.curve()->control();
    for (const Vec2& p : pts) {
      if (!scene.surface->admits(p, 1e-9)) {
        throw ContractError("curves." + name + ": control point outside the surface domain");
      }
    }
    scene.curves.emplace(name, std::move(c));
  }
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  json j;
  j["surface"] = write_surface(*scene.surface);
  json curves = json::object();
  for (const auto& [name, c] : scene.curves) curves[name] = write_curve(c);
  j["curves"] = curves;
  return j.dump(2) + "\n";
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scene file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write scene file '" + path + "'");
  out << serialize_scene(scene);
}

}  // namespace geolike
