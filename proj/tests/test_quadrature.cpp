#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "legendrian/quadrature.hpp"
#include "oracles.hpp"

using namespace legendrian;

namespace {

BatchIntegrand oscillatory(double n) {
  return [n](std::span<const double> t, std::span<double> f0, std::span<double> f1, std::span<double> f2) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      f0[i] = std::cos(n * t[i]) + 1.0;
      f1[i] = t[i] * t[i];
      f2[i] = std::sin(t[i]) * std::cos(n * t[i]);
    }
  };
}

// Antiderivative of sin t cos nt from 0.
double sin_cos(double t, double n) {
  return 0.5 * ((1 - std::cos((1 + n) * t)) / (1 + n) + (1 - std::cos((1 - n) * t)) / (1 - n));
}

}  // namespace

TEST_CASE("Gauss rules integrate polynomials of degree 2N-1 exactly") {
  for (int order : {8, 12, 16, 20}) {
    const GaussRule& rule = GaussRule::get(order);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    for (int degree = 0; degree < 2 * order; ++degree) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
      const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
      CHECK(std::abs(sum - exact) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(GaussRule::get(7), std::invalid_argument);
}

TEST_CASE("oscillation-aligned layout") {
  const PanelLayout layout = oscillation_aligned({}, 200, 2, 12, 64);
  CHECK(layout.panels == 400);
  CHECK(layout.stride == 2);
  CHECK(oscillation_aligned({}, 3).panels == 64);
  CHECK(oscillation_aligned({0.0, 1.0}, 1000, 2).panels == static_cast<std::int64_t>(std::ceil(2000 / (2 * oracle::pi))));
  CHECK_THROWS_AS(oscillation_aligned({}, 0), std::invalid_argument);
}

TEST_CASE("cumulative integral matches antiderivatives") {
  const double n = 200;
  const CumulativeIntegral ci(oscillatory(n), oscillation_aligned({}, 200));
  for (double t : oracle::linspace(0.0, 2 * oracle::pi, 997)) {
    const Vec3 v = ci.at(t);
    CHECK(std::abs(v.x - (std::sin(n * t) / n + t)) <= 1e-13);
    CHECK(std::abs(v.y - t * t * t / 3) <= 1e-12);
    CHECK(std::abs(v.z - sin_cos(t, n)) <= 1e-13);
  }
  CHECK(ci.at(0.0) == Vec3{});
  CHECK(ci.at(-1.0) == Vec3{});
  CHECK(ci.at(2 * oracle::pi) == ci.total());
  CHECK(ci.at(10.0) == ci.total());
}

TEST_CASE("cumulative integral is continuous across panel and checkpoint boundaries") {
  const CumulativeIntegral ci(oscillatory(50), PanelLayout{{0.0, 2 * oracle::pi}, 100, 16, 3});
  const double w = ci.panel_width();
  for (int k = 1; k < 100; ++k) {
    const double t = w * k;
    const Vec3 left = ci.at(std::nextafter(t, 0.0));
    const Vec3 mid = ci.at(t);
    const Vec3 right = ci.at(std::nextafter(t, 10.0));
    CHECK((left - mid).norm() <= 1e-13);
    CHECK((right - mid).norm() <= 1e-13);
  }
}

TEST_CASE("general domains and layout validation") {
  const CumulativeIntegral ci(oscillatory(3), PanelLayout{{-1.0, 2.0}, 64, 8, 4});
  CHECK(std::abs(ci.total().y - (8.0 / 3 + 1.0 / 3)) <= 1e-13);
  CHECK_THROWS_AS(CumulativeIntegral(oscillatory(1), PanelLayout{{0, 1}, 0, 12, 2}), std::invalid_argument);
  CHECK_THROWS_AS(CumulativeIntegral(oscillatory(1), PanelLayout{{0, 1}, 4, 12, 0}), std::invalid_argument);
  CHECK_THROWS_AS(CumulativeIntegral(oscillatory(1), PanelLayout{{0, 1}, 4, 11, 1}), std::invalid_argument);
}
