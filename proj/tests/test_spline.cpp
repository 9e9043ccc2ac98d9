#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geolike/errors.hpp"
#include "geolike/fixtures.hpp"
#include "geolike/spline.hpp"
#include "oracles.hpp"

using namespace geolike;

namespace {

std::vector<KnotVector> sample_knot_vectors() {
  std::vector<KnotVector> out;
  for (int p = 1; p <= 4; ++p) {
    for (int n : {p + 1, p + 2, 7, 12, 40}) {
      if (n >= p + 1) out.push_back(KnotVector::clamped_uniform(p, n));
    }
  }
  out.emplace_back(std::vector<double>{0, 0, 0, 0.1, 0.1, 0.55, 0.9, 1, 1, 1}, 2);
  out.emplace_back(std::vector<double>{-2, -2, -2, -2, -1, 0.5, 0.5, 0.5, 3, 3, 3, 3}, 3);
  out.emplace_back(std::vector<double>{0, 0, 0, 0.25, 0.25, 0.5, 0.5, 0.75, 0.75, 1, 1, 1}, 2);
  return out;
}

// Random rational surface: 5 x 4 cubic-by-quadratic, positive weights.
NurbsSurface random_surface(std::mt19937& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0), w(0.5, 2.0);
  std::vector<Vec3> net;
  std::vector<double> weights;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 4; ++j) {
      net.emplace_back(i + 0.3 * c(rng), j + 0.3 * c(rng), c(rng));
      weights.push_back(w(rng));
    }
  }
  return NurbsSurface(net, weights, KnotVector({0, 0, 0, 0, 0.4, 1, 1, 1, 1}, 3),
                      KnotVector({0, 0, 0, 0.5, 1, 1, 1}, 2));
}

}  // namespace

TEST_CASE("knot vectors validate their invariants") {
  CHECK_NOTHROW(KnotVector({0, 0, 1, 1}, 1));
  CHECK_THROWS_AS(KnotVector({0, 0, 0.5, 0.4, 1, 1}, 1), ContractError);    // decreasing
  CHECK_THROWS_AS(KnotVector({0, 0.1, 0.5, 1, 1, 1}, 2), ContractError);    // not clamped at the start
  CHECK_THROWS_AS(KnotVector({0, 0, 0, 1, 1}, 2), ContractError);           // too short
  CHECK_THROWS_AS(KnotVector({1, 1, 1, 1, 1, 1}, 2), ContractError);        // empty range
  CHECK_THROWS_AS(KnotVector({0, 0, 1, 1}, 0), ContractError);
  CHECK_THROWS_AS(KnotVector::clamped_uniform(2, 2), ContractError);
}

TEST_CASE("clamped uniform knots, spans, breakpoints and Greville abscissae") {
  const KnotVector k = KnotVector::clamped_uniform(2, 5);
  CHECK(k.values() == std::vector<double>{0, 0, 0, 1.0 / 3, 2.0 / 3, 1, 1, 1});
  CHECK(k.basis_count() == 5);
  CHECK(k.find_span(0.0) == 2);
  CHECK(k.find_span(0.5) == 3);
  CHECK(k.find_span(1.0) == 4);  // last non-empty span at the right end
  CHECK(k.breakpoints() == std::vector<double>{0, 1.0 / 3, 2.0 / 3, 1});
  const std::vector<double> g = k.greville();
  REQUIRE(g.size() == 5);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(1.0 / 6));
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK(g[4] == 1.0);
  CHECK_THROWS_AS(k.find_span(1.5), DomainError);
  CHECK_THROWS_AS(k.find_span(-1e-6), DomainError);

  const KnotVector shifted = KnotVector::clamped_uniform(3, 6, -1.0, 2.0);
  CHECK(shifted.front() == -1.0);
  CHECK(shifted.back() == 2.0);
}

TEST_CASE("basis: clamped endpoint and the spec examples") {
  const KnotVector k = KnotVector::clamped_uniform(2, 6);
  CHECK(basis_eval(k, 0, 0.0, 0) == 1.0);
  CHECK(basis_eval(k, 5, 1.0, 0) == 1.0);
  CHECK(basis_eval(k, 1, 0.0, 0) == 0.0);
  CHECK_THROWS_AS(basis_eval(k, 0, 1.2, 0), DomainError);
  CHECK_THROWS_AS(basis_eval(k, 6, 0.5, 0), ContractError);
  CHECK_THROWS_AS(basis_eval(k, 0, 0.5, 3), ContractError);
}

TEST_CASE("basis: partition of unity and zero derivative sum on every library knot vector") {
  for (const KnotVector& k : sample_knot_vectors()) {
    for (int s = 0; s <= 200; ++s) {
      const double x = k.front() + (k.back() - k.front()) * s / 200.0;
      double sum0 = 0.0, sum1 = 0.0, sum2 = 0.0;
      for (int i = 0; i < k.basis_count(); ++i) {
        sum0 += basis_eval(k, i, x, 0);
        sum1 += basis_eval(k, i, x, 1);
        sum2 += basis_eval(k, i, x, 2);
      }
      CHECK(std::abs(sum0 - 1.0) < 1e-13);
      CHECK(std::abs(sum1) < 1e-13 * (1.0 + k.basis_count()));
      if (k.degree() >= 2) CHECK(std::abs(sum2) < 1e-9 * std::pow(k.basis_count(), 2));
    }
  }
}

TEST_CASE("basis matches the recursive definition and its finite differences") {
  std::mt19937 rng(7);
  for (const KnotVector& k : sample_knot_vectors()) {
    std::uniform_real_distribution<double> ux(k.front(), k.back());
    const std::vector<double>& U = k.values();
    const int p = k.degree();
    for (int trial = 0; trial < 30; ++trial) {
      const double x = ux(rng);
      // stay away from breakpoints where one-sided derivatives differ
      bool near_knot = false;
      for (double b : k.breakpoints()) near_knot = near_knot || std::abs(x - b) < 1e-3;
      for (int i = 0; i < k.basis_count(); ++i) {
        CHECK(basis_eval(k, i, x, 0) == doctest::Approx(oracle::cox_de_boor(U, i, p, x)).epsilon(1e-12));
        if (near_knot) continue;
        auto N = [&](double y) { return oracle::cox_de_boor(U, i, p, y); };
        CHECK(basis_eval(k, i, x, 1) == doctest::Approx(oracle::central1(N, x, 1e-6)).epsilon(1e-6).scale(10));
        if (p >= 3) {
          CHECK(basis_eval(k, i, x, 2) == doctest::Approx(oracle::central2(N, x, 1e-4)).epsilon(1e-4).scale(100));
        }
      }
    }
  }
}

TEST_CASE("basis_derivatives rows hold the nonzero functions of a span") {
  const KnotVector k({0, 0, 0, 0, 0.3, 0.6, 1, 1, 1, 1}, 3);
  const double x = 0.45;
  const int span = k.find_span(x);
  const Eigen::MatrixXd d = basis_derivatives(k, span, x, 2);
  CHECK(d.rows() == 3);
  CHECK(d.cols() == 4);
  for (int j = 0; j <= 3; ++j) {
    for (int r = 0; r <= 2; ++r) CHECK(d(r, j) == doctest::Approx(basis_eval(k, span - 3 + j, x, r)));
  }
}

TEST_CASE("curve_eval: collinear controls and clamped ends") {
  const BSplineCurve2 line({{0, 0}, {0.5, 0.5}, {1, 1}}, KnotVector({0, 0, 0, 1, 1, 1}, 2));
  const Vec2 mid = curve_eval(line, 0.5);
  CHECK(mid.x() == doctest::Approx(0.5));
  CHECK(mid.y() == doctest::Approx(0.5));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> ctrl;
    for (int i = 0; i < 7; ++i) ctrl.emplace_back(c(rng), c(rng));
    const BSplineCurve2 curve(ctrl, KnotVector::clamped_uniform(2, 7));
    CHECK(curve.eval(0.0) == ctrl.front());
    CHECK(curve.eval(1.0) == ctrl.back());
  }
  CHECK_THROWS_AS(line.eval(1.01), DomainError);
  CHECK_THROWS_AS(BSplineCurve2({{0, 0}, {1, 1}}, KnotVector({0, 0, 0, 1, 1, 1}, 2)), ContractError);
}

TEST_CASE("curve_eval: derivatives against central differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> ctrl;
    for (int i = 0; i < 6; ++i) ctrl.emplace_back(c(rng), c(rng));
    const BSplineCurve2 curve(ctrl, KnotVector::clamped_uniform(2, 6));
    auto pos = [&](double x) { return curve.eval(x); };
    const Vec2 d1 = curve.eval(0.37, 1);
    CHECK(oracle::close(d1, oracle::central1(pos, 0.37, 1e-6), 1e-7, 1e-9));
    // second derivative is piecewise constant for a quadratic; 0.37 is inside a span
    const Vec2 d2 = curve.eval(0.37, 2);
    CHECK(oracle::close(d2, oracle::central2(pos, 0.37, 1e-4), 1e-5, 1e-6));
    Vec2 p, q1, q2;
    curve.eval_all(0.37, p, q1, q2);
    CHECK((p - curve.eval(0.37)).norm() < 1e-15);
    CHECK((q1 - d1).norm() < 1e-13);
    CHECK((q2 - d2).norm() < 1e-12);
  }
}

TEST_CASE("rational curves: the nine-point circle is exact and has matching derivatives") {
  const BoundaryCurve circ = BoundaryCurve::circle({0.2, -0.4}, 1.5);
  const BSplineCurve2& c = *circ.curve();
  CHECK(c.rational());
  for (int k = 0; k <= 100; ++k) {
    const double x = k / 100.0;
    CHECK(std::abs((c.eval(x) - Vec2(0.2, -0.4)).norm() - 1.5) < 1e-14);
  }
  auto pos = [&](double x) { return c.eval(x); };
  for (double x : {0.1, 0.33, 0.6, 0.9}) {
    CHECK(oracle::close(c.eval(x, 1), oracle::central1(pos, x, 1e-6), 1e-7, 1e-9));
    CHECK(oracle::close(c.eval(x, 2), oracle::central2(pos, x, 1e-4), 1e-5, 1e-5));
  }
  CHECK_THROWS_AS(BSplineCurve2({{0, 0}, {1, 0}, {1, 1}}, KnotVector({0, 0, 0, 1, 1, 1}, 2), {1, -1, 1}),
                  ContractError);
}

TEST_CASE("reversed curve traces the same points backwards") {
  const BSplineCurve2 c({{0, 0}, {1, 2}, {3, 1}, {4, 4}}, KnotVector({0, 0, 0, 0.3, 1, 1, 1}, 2));
  const BSplineCurve2 r = c.reversed();
  for (double x : {0.0, 0.2, 0.5, 0.71, 1.0}) {
    CHECK((r.eval(x) - c.eval(1.0 - x)).norm() < 1e-14);
    CHECK((r.eval(x, 1) + c.eval(1.0 - x, 1)).norm() < 1e-12);
  }
}

TEST_CASE("surface_jet: flat bilinear patch has vanishing second partials") {
  const NurbsSurface flat({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}, {1, 1, 1, 1}, KnotVector({0, 0, 1, 1}, 1),
                          KnotVector({0, 0, 1, 1}, 1));
  const SurfaceJet j = surface_jet(flat, 0.3, 0.7);
  CHECK(j.position.isApprox(Vec3(0.3, 0.7, 0)));
  CHECK(j.duu.isZero(0.0));
  CHECK(j.duv.isZero(0.0));
  CHECK(j.dvv.isZero(0.0));
  CHECK_THROWS_AS(flat.jet(1.2, 0.5), DomainError);
  CHECK_THROWS_AS(flat.jet(0.5, -0.1), DomainError);
}

TEST_CASE("surface_jet: exact NURBS cylinder stays on radius 1") {
  const NurbsSurface cyl = fixtures::nurbs_cylinder(1.0, 2.0);
  CHECK(cyl.rational());
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uu(0.0, 1.0), vv(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const Vec3 p = cyl.jet(uu(rng), vv(rng)).position;
    CHECK(std::abs(std::hypot(p.x(), p.y()) - 1.0) < 1e-12);
  }
  // quarter arc alone, extruded
  const double w = std::numbers::sqrt2 / 2.0;
  const NurbsSurface quarter({{1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}, {0, 1, 0}, {0, 1, 1}}, {1, 1, w, w, 1, 1},
                             KnotVector({0, 0, 0, 1, 1, 1}, 2), KnotVector({0, 0, 1, 1}, 1));
  for (int k = 0; k < 20; ++k) {
    const Vec3 p = quarter.jet(uu(rng), vv(rng)).position;
    CHECK(std::abs(std::hypot(p.x(), p.y()) - 1.0) < 1e-12);
  }
}

TEST_CASE("surface_jet: partials match central differences on rational surfaces") {
  std::mt19937 rng(19);
  for (int s = 0; s < 3; ++s) {
    const NurbsSurface surf = random_surface(rng);
    std::uniform_real_distribution<double> uu(0.02, 0.98);
    for (int k = 0; k < 50; ++k) {
      const double u = uu(rng), v = uu(rng);
      const SurfaceJet J = surf.jet(u, v);
      const double h = 1e-5;
      auto P = [&](double a, double b) { return surf.jet(a, b).position; };
      auto Du = [&](double a, double b) { return surf.jet(a, b).du; };
      auto Dv = [&](double a, double b) { return surf.jet(a, b).dv; };
      const Vec3 fu = (P(u + h, v) - P(u - h, v)) / (2 * h);
      const Vec3 fv = (P(u, v + h) - P(u, v - h)) / (2 * h);
      const Vec3 fuu = (Du(u + h, v) - Du(u - h, v)) / (2 * h);
      const Vec3 fvv = (Dv(u, v + h) - Dv(u, v - h)) / (2 * h);
      const Vec3 fuv = (Du(u, v + h) - Du(u, v - h)) / (2 * h);
      const Vec3 fvu = (Dv(u + h, v) - Dv(u - h, v)) / (2 * h);
      CHECK(oracle::close(J.du, fu, 1e-6, 1e-8));
      CHECK(oracle::close(J.dv, fv, 1e-6, 1e-8));
      CHECK(oracle::close(J.duu, fuu, 1e-6, 1e-7));
      CHECK(oracle::close(J.dvv, fvv, 1e-6, 1e-7));
      CHECK(oracle::close(J.duv, fuv, 1e-6, 1e-7));
      CHECK(oracle::close(J.duv, fvu, 1e-6, 1e-7));  // mixed partials commute
    }
  }
}

TEST_CASE("surface_jet: unit weights reproduce the polynomial tensor product bit for bit") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<Vec3> net;
  for (int i = 0; i < 6 * 5; ++i) net.emplace_back(c(rng), c(rng), c(rng));
  const KnotVector ku = KnotVector::clamped_uniform(3, 6), kv = KnotVector::clamped_uniform(2, 5);
  const NurbsSurface surf(net, std::vector<double>(net.size(), 1.0), ku, kv);
  CHECK_FALSE(surf.rational());
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    const double u = uu(rng), v = uu(rng);
    const int su = ku.find_span(u), sv = kv.find_span(v);
    const Eigen::MatrixXd Nu = basis_derivatives(ku, su, u, 0), Nv = basis_derivatives(kv, sv, v, 0);
    Vec3 p = Vec3::Zero();
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 2; ++j) p += (Nu(0, i) * Nv(0, j)) * net[std::size_t((su - 3 + i) * 5 + (sv - 2 + j))];
    }
    CHECK(surf.jet(u, v).position == p);
  }
}

TEST_CASE("periodic surfaces wrap and validate their seams") {
  const NurbsSurface cyl = fixtures::nurbs_cylinder(2.0, 1.0);
  for (double u : {0.0, 0.13, 0.5, 0.97}) {
    for (double v : {0.0, 0.4, 1.0}) {
      const SurfaceJet a = cyl.jet(u, v), b = cyl.jet(u + 1.0, v), c = cyl.jet(u - 3.0, v);
      CHECK((a.position - b.position).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((a.du - b.du).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((a.duu - c.duu).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  CHECK_THROWS_AS(cyl.jet(0.5, 1.5), DomainError);

  // an open net flagged periodic is rejected
  const NurbsSurface& good = cyl;
  std::vector<Vec3> net = good.control_net();
  net[0] += Vec3(0.0, 0.5, 0.0);  // first seam row no longer matches the last
  CHECK_THROWS_AS(NurbsSurface(net, good.weights(), good.knots_u(), good.knots_v(), good.periodicity()),
                  ContractError);
  // period must equal the knot range
  CHECK_THROWS_AS(NurbsSurface(good.control_net(), good.weights(), good.knots_u(), good.knots_v(),
                               Periodicity{true, false, 2.0, 0.0}),
                  ContractError);
}

TEST_CASE("NURBS construction errors") {
  const KnotVector k = KnotVector({0, 0, 1, 1}, 1);
  CHECK_THROWS_AS(NurbsSurface({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}}, {1, 1, 1}, k, k), ContractError);
  CHECK_THROWS_AS(NurbsSurface({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}, {1, 1, 1}, k, k), ContractError);
  CHECK_THROWS_AS(NurbsSurface({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}, {1, 0, 1, 1}, k, k), ContractError);
}

TEST_CASE("wrap_periodic and check_range") {
  CHECK(wrap_periodic(7.0, 0.0, 2.0) == doctest::Approx(1.0));
  CHECK(wrap_periodic(-0.5, 0.0, 2.0) == doctest::Approx(1.5));
  CHECK(wrap_periodic(2.0, 0.0, 2.0) >= 0.0);
  CHECK(wrap_periodic(2.0, 0.0, 2.0) < 2.0);
  CHECK(check_range(1.0 + 1e-15, 0.0, 1.0, "x") == 1.0);
  CHECK(check_range(-1e-15, 0.0, 1.0, "x") == 0.0);
  CHECK_THROWS_AS(check_range(1.001, 0.0, 1.0, "x"), DomainError);
}
