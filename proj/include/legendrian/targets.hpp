#pragma once

// Built-in target curves with analytic first and second derivatives.

#include <cstdint>

#include "legendrian/curve.hpp"

namespace legendrian::targets {

/// (t, cos 5t, sin 5t) on [0, 2π].
ParamCurve helix();

/// (0, 0, t): pure sideways motion, the parallel-parking target.
ParamCurve parking();

/// (cos t, sin t, 0), periodic.
ParamCurve circle();

/// (t, 0, 0).
ParamCurve line(Interval domain = {});

/// (t, 0, sin t).
ParamCurve sine_reference(Interval domain = {});

/// Each coordinate is c₀ + Σ_{k=1}^{degree} (a_k cos kt + b_k sin kt)/k² with
/// coefficients uniform in [−amplitude, amplitude], drawn from a seeded
/// mt19937_64. When `periodic` is false a linear drift term is added to x so the
/// curve is not closed.
ParamCurve random_trig(std::uint64_t seed, Interval domain = {}, int degree = 3,
                       double amplitude = 1.0, bool periodic = false);

}  // namespace legendrian::targets
