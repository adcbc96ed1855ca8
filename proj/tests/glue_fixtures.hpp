#pragma once

// Randomized two-chart problems: a smooth reference on I = [−1, 1] and two open
// approximations of it at different tolerances.

#include <cmath>
#include <cstdint>
#include <random>

#include "legendrian/convex_integration.hpp"
#include "legendrian/gluing.hpp"

namespace fixture {

using namespace legendrian;

inline ParamCurve random_reference(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double y0 = u(rng);
  const double ay = 0.3 * u(rng);
  const double wy = 1.0 + std::abs(u(rng));
  const double az = u(rng);
  const double sz = 0.5 * u(rng);
  const double sx = 1.0 + 0.5 * std::abs(u(rng));
  return ParamCurve(
      [=](double t) { return Vec3{sx * t, y0 + ay * std::sin(wy * t), az * std::sin(t) + sz * t}; },
      [=](double t) { return Vec3{sx, ay * wy * std::cos(wy * t), az * std::cos(t) + sz}; },
      [=](double t) { return Vec3{0.0, -ay * wy * wy * std::sin(wy * t), -az * std::sin(t)}; },
      Interval{-1.0, 1.0}, false, "glue-ref:" + std::to_string(seed));
}

inline GlueProblem random_problem(std::uint64_t seed, double eps) {
  const ParamCurve reference = random_reference(seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> tol(0.05, 0.1);
  const LegendrianCurve sigma = approximate_open(reference, tol(rng));
  const LegendrianCurve tau = approximate_open(reference, tol(rng));
  return GlueProblem{sigma, tau, reference, eps};
}

}  // namespace fixture
