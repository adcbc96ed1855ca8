#pragma once

// Two-chart gluing: a Legendrian connector on [−δ, δ] between two arcs that
// approximate the same reference curve on an overlap interval I ∋ 0.

#include <functional>
#include <memory>

#include "legendrian/curve.hpp"
#include "legendrian/legendrian_curve.hpp"
#include "legendrian/quadrature.hpp"

namespace legendrian {

/// C_ε = {(u, v) : |v − y0·u| ≤ ε|u|}.
struct ConeSet {
  double y0 = 0.0;
  double eps = 0.0;

  bool contains(Vec2 p, double slack = 0.0) const;
};

/// w(y0, ε) = √((1 + y0²)(1 + (|y0| + ε)²)).
double radius_w(double y0, double eps);

/// R(r) = (r/ε)·w(y0, ε). Requires r > ε/√(1 + y0²).
double radius_R(double r, double y0, double eps);

/// The exact smallest R with B̄_r ⊂ conv(ℛ_{0,ε} ∩ B̄_R) in the cone regime:
/// r / sin(Δ/2), Δ = atan(y0 + ε) − atan(y0 − ε). Equals radius_R for y0 = 0.
double hull_radius_exact(double r, double y0, double eps);

struct GlueProblem {
  LegendrianCurve sigma;
  LegendrianCurve tau;
  /// Reference (x, y, z) on the overlap interval I (its domain), 0 ∈ int I.
  ParamCurve reference;
  double eps = 0.0;
  int check_grid = 2000;

  /// Throws std::invalid_argument unless ε ∈ (0, 1/2), 0 lies inside I, both
  /// arcs are defined on I and both are within ε² of the reference on a grid.
  void validate() const;
};

struct DeltaChoice {
  double delta = 0.0;
  double rho = 0.0;
};

/// δ = 0.9·min(ε², dist(0, ∂I), ε²/‖(x,y,z)‖_{C¹(I)}), shrunk by at most 10%
/// until σ̇₁(−δ) and τ̇₁(δ) are bounded away from zero; ρ = δ/4.
DeltaChoice choose_delta(const GlueProblem& problem);

enum class RampSide { left, right };

/// Ramp γ = θᵏ·(u, y0·u + Δ·θᵏ), Δ = v − y0·u, on a segment of length ρ. The
/// ramp variable θ falls from 1 to 0 on the left segment [−δ, −δ+ρ] and rises
/// from 0 to 1 on the right one [δ−ρ, δ].
class ConnectorRamp {
 public:
  ConnectorRamp(Vec2 endpoint_deriv, double y0, double rho, int k, RampSide side);

  /// θ at offset s ∈ [0, ρ] from the segment start.
  double theta(double s) const;
  Vec2 value(double s) const;
  /// dγ/dt at offset s.
  Vec2 value_deriv(double s) const;
  /// ∫ γ from the segment start to offset s (closed form).
  Vec2 integral(double s) const;
  Vec2 total() const { return integral(rho_); }
  /// Slope γ₂/γ₁ = y0 + (Δ/u)·θᵏ and its t-derivative.
  double slope(double s) const;
  double slope_deriv(double s) const;
  /// Upper bound ρ·(|u|(1 + |y0|)/(k+1) + |Δ|/(2k+1)) on ∫|γ|.
  double mass_bound() const;

  int k() const { return k_; }
  double rho() const { return rho_; }
  RampSide side() const { return side_; }

 private:
  double u_;
  double y0_;
  double gap_;
  double rho_;
  int k_;
  RampSide side_;
};

ConnectorRamp connector_ramp(Vec2 endpoint_deriv, double y0, double rho, int k, RampSide side);

/// Smallest power-of-two k whose ramp has mass_bound() < `budget`.
int choose_ramp_exponent(Vec2 endpoint_deriv, double y0, double rho, double budget);

/// Closed loop on τ ∈ [0, 1] based at the origin with every derivative
/// vanishing there:
///   γ₁ = ψ(τ)(α + A sin 2πτ),  γ₂ = γ₁(y0 + K γ₁),  ψ = exp((4 − 1/(τ(1−τ)))/4),
/// with α and K fixed by the mean ∫₀¹γ = p̄ and A the least amplitude keeping
/// γ in ℛ_{0,ε}.
class BarycenterLoop {
 public:
  Vec2 eval(double tau) const;
  /// dγ/dτ.
  Vec2 deriv(double tau) const;
  /// Slope y0 + K·γ₁ and its τ-derivative.
  double slope(double tau) const;
  double slope_deriv(double tau) const;

  /// ∫₀^τ γ by the composite rule used for the moments.
  Vec2 integral(double tau) const;
  Vec2 mean() const;

  double alpha() const { return alpha_; }
  double amplitude() const { return amplitude_; }
  double coefficient() const { return k_; }
  /// Grid max of |γ| over [0, 1].
  double max_norm() const { return max_norm_; }
  Vec2 target() const { return target_; }

 private:
  friend BarycenterLoop barycenter_loop(Vec2 pbar, double y0, double eps, double r_cap);
  BarycenterLoop() = default;

  Vec2 target_;
  double y0_ = 0.0;
  double alpha_ = 0.0;
  double amplitude_ = 0.0;
  double k_ = 0.0;
  double max_norm_ = 0.0;
  std::shared_ptr<const CumulativeIntegral> integral_;
};

/// Throws ConstructionError when the loop leaves B̄_{R_cap}. Requires ε > 0.
BarycenterLoop barycenter_loop(Vec2 pbar, double y0, double eps, double r_cap);

struct Connector {
  double delta = 0.0;
  double rho = 0.0;
  int k = 1;
  double y0 = 0.0;
  Vec2 p1, p1_dot, p2, p2_dot;
  /// p = (p₂ − p₁)/(2δ) and the middle-loop mean p̄.
  Vec2 p, pbar;
  /// r̄ = 2ε²/δ and R_cap = R(3r̄).
  double r_bar = 0.0;
  double r_cap = 0.0;
  /// Amplitude A of the middle loop.
  double loop_r = 0.0;
  double left_mass_bound = 0.0;
  double right_mass_bound = 0.0;
};

struct GlueResult {
  LegendrianCurve curve;
  Connector connector;
  /// γ(t) = (ȧ, ċ) of the glued curve, for inspection.
  std::function<Vec2(double)> path;
};

GlueResult glue(const GlueProblem& problem);

}  // namespace legendrian
