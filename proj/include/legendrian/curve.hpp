#pragma once

#include <functional>
#include <string>
#include <vector>

#include "legendrian/types.hpp"

namespace legendrian {

/// A smooth parametrized curve t ↦ (x, y, z) with derivative evaluators.
///
/// Evaluators are pure; a ParamCurve is immutable after construction and may be
/// evaluated concurrently. When no second-derivative evaluator is supplied,
/// second() falls back to a central difference of deriv().
class ParamCurve {
 public:
  using Evaluator = std::function<Vec3(double)>;

  ParamCurve(Evaluator position, Evaluator velocity, Evaluator acceleration = {},
             Interval domain = {}, bool periodic = false, std::string name = {});

  Vec3 eval(double t) const { return position_(t); }
  Vec3 deriv(double t) const { return velocity_(t); }
  Vec3 second(double t) const;

  const Interval& domain() const { return domain_; }
  bool periodic() const { return periodic_; }
  bool has_second() const { return static_cast<bool>(acceleration_); }
  const std::string& name() const { return name_; }

  ParamCurve renamed(std::string name) const;

 private:
  Evaluator position_;
  Evaluator velocity_;
  Evaluator acceleration_;
  Interval domain_;
  bool periodic_;
  std::string name_;
};

struct Sample {
  double t = 0.0;
  Vec3 p;
};

/// Raw C⁰ input: ordered samples with strictly increasing parameter.
struct SampledCurve {
  std::vector<Sample> samples;
  bool periodic = false;

  /// Throws std::invalid_argument unless t is strictly increasing, there are at
  /// least four samples, and (when periodic) all t lie in [0, 2π].
  void validate() const;
};

/// Smooths the piecewise-linear interpolant of `raw` by convolution with a
/// compactly supported C^∞ bump of half-width `bandwidth`.
///
/// Non-periodic inputs are extended by their boundary samples; periodic ones are
/// wrapped with period 2π, and the result is periodic on [0, 2π]. Derivatives up
/// to second order are evaluated exactly from the interpolant's slopes.
ParamCurve mollify(const SampledCurve& raw, double bandwidth);

/// Max of |eval(t)| over a uniform grid of `grid_size` points on the domain.
/// A lower estimate of the true sup-norm.
double c0_norm(const ParamCurve& curve, int grid_size);

/// Grid sup of |eval| plus grid sup of |deriv|.
double c1_norm(const ParamCurve& curve, int grid_size);

/// Uniform grid of `count` points covering [begin, end] inclusive.
std::vector<double> uniform_grid(Interval domain, int count);

}  // namespace legendrian
