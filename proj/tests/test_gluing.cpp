#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "glue_fixtures.hpp"
#include "legendrian/contact.hpp"
#include "legendrian/convex_integration.hpp"
#include "legendrian/gluing.hpp"
#include "legendrian/targets.hpp"
#include "legendrian/verify.hpp"
#include "oracles.hpp"

using namespace legendrian;

namespace {

double hull_margin(double y0, double eps, double R, double r) {
  return oracle::hull_inradius(oracle::convex_hull(oracle::sample_ample_ball(y0, eps, R, 2000))) - r;
}

// (1/2δ)∫γ over [−δ, δ] by the adaptive oracle, split at the segment joints.
Vec2 oracle_mean(const GlueResult& g) {
  const Connector& c = g.connector;
  const double cuts[] = {-c.delta, -c.delta + c.rho, c.delta - c.rho, c.delta};
  Vec2 sum;
  for (int i = 0; i < 3; ++i) sum = sum + verify::quad_oracle2(g.path, cuts[i], cuts[i + 1], 1e-13).value;
  return (1.0 / (2 * c.delta)) * sum;
}

}  // namespace

TEST_CASE("R(r) examples") {
  CHECK(radius_R(1.0, 0.0, 0.5) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(radius_R(2.0, 0.3, 0.2) == doctest::Approx(2 * radius_R(1.0, 0.3, 0.2)).epsilon(1e-15));
  CHECK(radius_w(0.0, 0.5) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK_THROWS_AS(radius_R(0.2, 0.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(radius_R(1.0, 0.0, 0.0), std::invalid_argument);
  CHECK(hull_radius_exact(1.0, 0.0, 0.3) == doctest::Approx(radius_R(1.0, 0.0, 0.3)).epsilon(1e-14));
}

TEST_CASE("R(r) against the convex hull oracle for y0 = 0") {
  const double R = radius_R(1.0, 0.0, 0.3);
  CHECK(hull_margin(0.0, 0.3, R, 1.0) >= -1e-12);
  CHECK(hull_margin(0.0, 0.3, 0.95 * R, 1.0) < 0.0);
}

TEST_CASE("exact hull radius is sharp and the formula is sufficient for y0 = 1") {
  const double exact = hull_radius_exact(1.0, 1.0, 0.3);
  CHECK(hull_margin(1.0, 0.3, exact, 1.0) >= -1e-12);
  CHECK(hull_margin(1.0, 0.3, 0.95 * exact, 1.0) < 0.0);
  const double R = radius_R(1.0, 1.0, 0.3);
  CHECK(R >= exact);
  CHECK(hull_margin(1.0, 0.3, R, 1.0) >= 0.0);
}

TEST_CASE("cone membership") {
  const ConeSet cone{1.0, 0.2};
  CHECK(cone.contains({1.0, 1.2}));
  CHECK(cone.contains({-1.0, -0.8}));
  CHECK_FALSE(cone.contains({1.0, 1.3}));
  CHECK(cone.contains({1.0, 1.3}, 0.11));
  CHECK(cone.contains({0.0, 0.0}));
}

TEST_CASE("choose_delta on a straight reference") {
  const Interval I{-2 * oracle::pi, 2 * oracle::pi};
  const ParamCurve reference = targets::line(I);
  const LegendrianCurve arc = approximate_open(reference, 0.1);
  const GlueProblem problem{arc, arc, reference, 0.4};
  const DeltaChoice d = choose_delta(problem);
  const double expected = 0.9 * 0.16 / (2 * oracle::pi + 1);
  CHECK(d.delta == doctest::Approx(expected).epsilon(1e-3));
  CHECK(d.delta == doctest::Approx(0.019772).epsilon(1e-3));
  CHECK(d.rho == d.delta / 4);
  CHECK(d.rho < d.delta / 2);
  CHECK(d.delta < 0.16);
  CHECK(d.delta <= 2 * oracle::pi);
  CHECK(d.delta * c1_norm(reference, 10000) <= 0.16);
}

TEST_CASE("choose_delta constraints on random problems") {
  for (std::uint64_t seed = 100; seed < 104; ++seed) {
    const GlueProblem problem = fixture::random_problem(seed, 0.45);
    const DeltaChoice d = choose_delta(problem);
    CHECK(d.delta < 0.45 * 0.45);
    CHECK(d.delta < 1.0);
    CHECK(d.delta * c1_norm(problem.reference, 10000) <= 0.45 * 0.45);
    CHECK(d.rho < d.delta / 2);
    CHECK(std::abs(problem.sigma.deriv(-d.delta).x) > 0.0);
    CHECK(std::abs(problem.tau.deriv(d.delta).x) > 0.0);
  }
}

TEST_CASE("glue problem validation") {
  const ParamCurve reference = targets::sine_reference({-1.0, 1.0});
  const LegendrianCurve arc = approximate_open(reference, 0.1);
  CHECK_THROWS_AS(GlueProblem({arc, arc, reference, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GlueProblem({arc, arc, reference, 0.0}).validate(), std::invalid_argument);
  // Too far from the reference for ε² = 0.01.
  CHECK_THROWS_AS(GlueProblem({arc, arc, reference, 0.1}).validate(), std::invalid_argument);
  const ParamCurve shifted = targets::sine_reference({0.0, 1.0});
  CHECK_THROWS_AS(GlueProblem({arc, arc, shifted, 0.45}).validate(), std::invalid_argument);
  const LegendrianCurve short_arc = approximate_open(targets::sine_reference({-0.5, 1.0}), 0.1);
  CHECK_THROWS_AS(GlueProblem({short_arc, arc, reference, 0.45}).validate(), std::invalid_argument);
}

TEST_CASE("ramp examples") {
  const double y0 = 0.7;
  const double rho = 0.01;
  const ConnectorRamp flat({2.0, 2.0 * y0}, y0, rho, 3, RampSide::left);
  for (double s : oracle::linspace(0.0, rho, 11)) {
    const Vec2 g = flat.value(s);
    CHECK(std::abs(g.v - y0 * g.u) <= 1e-15);
  }

  const ConnectorRamp left({1.0, y0 + 0.1}, y0, rho, 2, RampSide::left);
  CHECK(left.slope(0.0) == doctest::Approx(y0 + 0.1).epsilon(1e-15));
  CHECK(left.slope(rho) == y0);
  CHECK(left.value(rho) == Vec2{});
  const ConnectorRamp right({1.0, y0 + 0.1}, y0, rho, 2, RampSide::right);
  CHECK(right.slope(0.0) == y0);
  CHECK(right.slope(rho) == doctest::Approx(y0 + 0.1).epsilon(1e-15));
  CHECK(right.value(0.0) == Vec2{});

  CHECK_THROWS_AS(connector_ramp({0.0, 1.0}, y0, rho, 2, RampSide::left), std::invalid_argument);
  CHECK_THROWS_AS(connector_ramp({1.0, 1.0}, y0, 0.0, 2, RampSide::left), std::invalid_argument);
  CHECK_THROWS_AS(connector_ramp({1.0, 1.0}, y0, rho, 0, RampSide::left), std::invalid_argument);
}

TEST_CASE("ramp integrals, derivatives and mass") {
  const Vec2 d{1.3, -0.4};
  const double y0 = -0.2;
  const double rho = 0.02;
  for (RampSide side : {RampSide::left, RampSide::right}) {
    for (int k : {1, 2, 4, 16, 64}) {
      const ConnectorRamp ramp(d, y0, rho, k, side);
      for (double s : {0.003, 0.011, rho}) {
        const Vec2 q = verify::quad_oracle2([&](double x) { return ramp.value(x); }, 0.0, s, 1e-15).value;
        CHECK((q - ramp.integral(s)).norm() <= 1e-14);
      }
      for (double s : {0.004, 0.015}) {
        const double h = 1e-7;
        const Vec2 fd = (1.0 / (2 * h)) * (ramp.value(s + h) - ramp.value(s - h));
        CHECK((fd - ramp.value_deriv(s)).norm() <= 1e-5 * (1 + ramp.value_deriv(s).norm()));
        const double fds = (ramp.slope(s + h) - ramp.slope(s - h)) / (2 * h);
        CHECK(std::abs(fds - ramp.slope_deriv(s)) <= 1e-5 * (1 + std::abs(fds)));
        CHECK(ramp.slope(s) * ramp.value(s).u == doctest::Approx(ramp.value(s).v).epsilon(1e-13));
      }
      const double mass =
          verify::quad_oracle([&](double x) { return ramp.value(x).norm(); }, 0.0, rho, 1e-14).value;
      CHECK(mass <= ramp.mass_bound());
      // The bound is dominated by ρ·C/k with C = |u|(1+|y0|) + |Δ|: halving on doubling k.
      const double c = std::abs(d.u) * (1 + std::abs(y0)) + std::abs(d.v - y0 * d.u);
      const ConnectorRamp doubled(d, y0, rho, 2 * k, side);
      CHECK(doubled.mass_bound() <= rho * c / (2 * k));
      CHECK(ramp.mass_bound() <= rho * c / k);
    }
  }
  CHECK(choose_ramp_exponent(d, y0, rho, 1e-4) == 512);
  CHECK_THROWS_AS(choose_ramp_exponent(d, y0, rho, 0.0), std::invalid_argument);
}

TEST_CASE("barycenter loop examples") {
  const BarycenterLoop zero = barycenter_loop({0.0, 0.0}, 0.0, 0.3, 10.0);
  CHECK(zero.max_norm() == 0.0);
  CHECK(zero.mean() == Vec2{});

  const BarycenterLoop loop = barycenter_loop({0.1, 0.0}, 0.0, 0.3, 10.0);
  const Vec2 m = verify::quad_oracle2([&](double t) { return loop.eval(t); }, 0.0, 1.0, 1e-13).value;
  CHECK(std::abs(m.u - 0.1) <= 1e-10);
  CHECK(std::abs(m.v) <= 1e-10);
  CHECK((loop.mean() - Vec2{0.1, 0.0}).norm() <= 1e-10);
  CHECK(loop.eval(0.0) == Vec2{});
  CHECK(loop.eval(1.0) == Vec2{});
}

TEST_CASE("barycenter loops: mean, membership, containment and flat ends") {
  const double eps = 0.45;
  for (double y0 : {-0.8, 0.0, 0.6}) {
    for (Vec2 pbar : {Vec2{1.0, y0 + 0.3}, Vec2{-0.5, -0.5 * y0 + 0.2}, Vec2{2.0, 2.0 * y0 - 0.9}}) {
      const double cap = 200.0;
      const BarycenterLoop loop = barycenter_loop(pbar, y0, eps, cap);
      const Vec2 m = verify::quad_oracle2([&](double t) { return loop.eval(t); }, 0.0, 1.0, 1e-13).value;
      CHECK((m - pbar).norm() <= 1e-10);
      double worst = 1e300;
      double biggest = 0.0;
      for (double t : oracle::linspace(0.0, 1.0, 10000)) {
        const Vec2 g = loop.eval(t);
        worst = std::min(worst, ample_contains({y0, eps}, g.u, g.v).margin);
        biggest = std::max(biggest, g.norm());
        CHECK(loop.slope(t) * g.u == doctest::Approx(g.v).epsilon(1e-12));
      }
      CHECK(worst >= -1e-12);
      CHECK(biggest <= cap);
      CHECK(loop.max_norm() == doctest::Approx(biggest).epsilon(1e-3));
      for (double t : {1e-3, 1 - 1e-3}) {
        CHECK(loop.eval(t).norm() <= 1e-100);
        CHECK(loop.deriv(t).norm() <= 1e-100);
      }
      const double h = 1e-7;
      for (double t : {0.2, 0.5, 0.81}) {
        const Vec2 fd = (1.0 / (2 * h)) * (loop.eval(t + h) - loop.eval(t - h));
        CHECK((fd - loop.deriv(t)).norm() <= 1e-5 * (1 + fd.norm()));
      }
    }
  }
  CHECK_THROWS_AS(barycenter_loop({5.0, 3.0}, 0.0, 0.3, 1.0), ConstructionError);
  CHECK_THROWS_AS(barycenter_loop({1.0, 1.0}, 0.0, 0.0, 10.0), std::invalid_argument);
}

TEST_CASE("glue: arcs of the sine reference") {
  const ParamCurve reference = targets::sine_reference({-1.0, 1.0});
  const LegendrianCurve sigma = approximate_open(reference, 0.1);
  const LegendrianCurve tau = approximate_open(reference, 0.08);
  const GlueResult g = glue({sigma, tau, reference, 0.45});
  const Connector& c = g.connector;
  CHECK(g.curve.kind() == CurveKind::glued);
  CHECK(g.curve.domain().begin == -c.delta);
  CHECK((g.curve.eval(-c.delta) - sigma.eval(-c.delta)).norm() <= 1e-9);
  CHECK((g.curve.eval(c.delta) - tau.eval(c.delta)).norm() <= 1e-9);
  CHECK(g.curve.meta().ac_bound == doctest::Approx(17 * 0.45).epsilon(1e-15));
}

TEST_CASE("glue on randomized problems") {
  const double eps = 0.45;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    CAPTURE(seed);
    const GlueProblem problem = fixture::random_problem(seed, eps);
    const GlueResult g = glue(problem);
    const Connector& c = g.connector;
    const LegendrianCurve& eta = g.curve;

    CHECK((eta.eval(-c.delta) - problem.sigma.eval(-c.delta)).norm() <= 1e-9);
    CHECK((eta.eval(c.delta) - problem.tau.eval(c.delta)).norm() <= 1e-9);
    const Vec3 dl = eta.deriv(-c.delta) - problem.sigma.deriv(-c.delta);
    const Vec3 dr = eta.deriv(c.delta) - problem.tau.deriv(c.delta);
    CHECK(std::hypot(dl.x, dl.z) <= 1e-9);
    CHECK(std::hypot(dr.x, dr.z) <= 1e-9);

    CHECK((oracle_mean(g) - c.p).norm() <= 1e-10);
    CHECK(c.left_mass_bound < 0.5 * c.delta * eps);
    CHECK(c.right_mass_bound < 0.5 * c.delta * eps);
    CHECK(c.rho < c.delta / 2);

    const ConeSet cone{c.y0, eps};
    double b_err = 0.0, ac_err = 0.0;
    for (double t : uniform_grid(eta.domain(), 10000)) {
      const Vec2 v = g.path(t);
      const bool ramp = t <= -c.delta + c.rho || t >= c.delta - c.rho;
      if (ramp) {
        CHECK(cone.contains(v, 1e-12 * (1 + v.norm())));
      } else {
        CHECK(ample_contains({c.y0, eps}, v.u, v.v).margin >= -1e-12 * (1 + v.norm() * v.norm()));
      }
      const Vec3 p = eta.eval(t);
      const Vec3 q = problem.reference.eval(t);
      b_err = std::max(b_err, std::abs(p.y - q.y));
      ac_err = std::max(ac_err, std::hypot(p.x - q.x, p.z - q.z));
    }
    CHECK(b_err < 2 * eps);
    const double spread = std::abs(c.y0) + 0.5;
    CHECK(ac_err <= eps * (14 + 12 * spread * spread));
    CHECK(legendrian_residual(eta.path(), ContactModel::Standard3, 10000).max_abs <= 1e-10);
  }
}

TEST_CASE("glue rejects a tolerance outside (0, 1/2)") {
  const GlueProblem problem = fixture::random_problem(3, 0.5);
  CHECK_THROWS_AS(glue(problem), std::invalid_argument);
}
