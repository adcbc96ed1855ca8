#pragma once

// Independent numerical oracles. They deliberately use different algorithms
// from the construction path (adaptive Gauss–Kronrod instead of fixed
// oscillation-aligned panels, plain scalar loops instead of SIMD kernels), so
// agreement between the two is evidence rather than tautology.

#include <cstdint>
#include <functional>
#include <span>

#include "legendrian/convex_integration.hpp"
#include "legendrian/curve.hpp"

namespace legendrian::verify {

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
  std::int64_t evaluations = 0;
};

struct QuadResult2 {
  Vec2 value;
  double est_error = 0.0;
  std::int64_t evaluations = 0;
};

/// Globally adaptive G7/K15 integration of f over [a, b] until the summed error
/// estimate is ≤ tol. Deterministic. Throws ConstructionError when the
/// evaluation budget is exhausted.
QuadResult quad_oracle(const std::function<double(double)>& f, double a, double b, double tol,
                       std::int64_t max_evaluations = 4'000'000);

QuadResult2 quad_oracle2(const std::function<Vec2(double)>& f, double a, double b, double tol,
                         std::int64_t max_evaluations = 4'000'000);

double fd_derivative(const std::function<double(double)>& f, double t, double h);

/// Grid max of |f − g| over `grid_size` uniform points of `domain`.
double c0_distance(const std::function<Vec3(double)>& f, const std::function<Vec3(double)>& g,
                   Interval domain, int grid_size);

/// Compares derivatives 0..order of the curve at the two ends of its domain.
/// Orders 0 and 1 use eval() and deriv(); higher orders use one-sided finite
/// differences of deriv() with step h.
bool endpoint_jet_match(const ParamCurve& curve, int order, double tol, double h = 1e-4);

/// Worst ample-set margin of the loop family over the tensor grid, evaluated
/// point by point with ample_contains.
double membership_scan(const LoopFamily& family, double eps, std::span<const double> t_grid,
                       std::span<const double> s_grid);

}  // namespace legendrian::verify
