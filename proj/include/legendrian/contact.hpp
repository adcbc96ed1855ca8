#pragma once

#include <string_view>
#include <vector>

#include "legendrian/curve.hpp"
#include "legendrian/legendrian_curve.hpp"

namespace legendrian {

/// Standard3: α = dz − y dx on ℝ³, components read as (a, b, c).
/// Car: θ = sin φ da − cos φ dc on S¹×ℝ², components read as (φ, a, c).
enum class ContactModel { Standard3, Car };

std::string_view to_string(ContactModel model);

struct ResidualReport {
  std::vector<double> grid;
  std::vector<double> residuals;
  double max_abs = 0.0;
};

/// Evaluates the contact form on the curve velocity over a uniform grid of the
/// domain. Residuals are raw, not normalized by speed.
ResidualReport legendrian_residual(const ParamCurve& curve, ContactModel model, int grid_size);

/// Maps a Standard3 Legendrian curve to the car model via φ = arctan b, keeping
/// (a, c). The principal branch gives |φ| < π/2.
ParamCurve car_from_standard(const LegendrianCurve& curve);

}  // namespace legendrian
