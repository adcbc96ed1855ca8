#pragma once

#include <cstdint>
#include <optional>

#include "legendrian/curve.hpp"
#include "legendrian/kernels.hpp"
#include "legendrian/legendrian_curve.hpp"

namespace legendrian {

/// The admissible derivative set at parameter t:
/// {(u, v) : |v − y(t)·u| ≤ ε·min(|u|, u²)}.
struct AmpleSet {
  double y_t = 0.0;
  double eps = 0.0;
};

struct Membership {
  bool inside = false;
  /// ε·min(|u|, u²) − |v − y_t·u|; negative outside.
  double margin = 0.0;
};

Membership ample_contains(const AmpleSet& set, double u, double v);

/// Loop family γ(t, s) = (γ₁, γ₂) with
///   γ₁ = r cos s + ẋ(t),
///   γ₂ = γ₁·(y(t) + k(t)·γ₁),  k = 2(ż − yẋ)/(r² + 2ẋ²).
/// Its mean over s is (ẋ(t), ż(t)) for every r > 0.
class LoopFamily {
 public:
  LoopFamily(ParamCurve target, double r);

  Vec2 eval(double t, double s) const;
  /// k(t) from the formula above.
  double coefficient(double t) const;
  /// Per-t data for the C¹ jet scan, including dk/dt.
  kernels::LoopPoint jet_point(double t) const;

  double r() const { return r_; }
  const ParamCurve& target() const { return target_; }

 private:
  ParamCurve target_;
  double r_;
};

Vec2 loop_eval(const LoopFamily& family, double t, double s);

struct BarycenterCheck {
  Vec2 mean;
  double defect = 0.0;
};

/// Mean of γ(t, ·) over S¹ by the adaptive oracle quadrature, and its distance
/// to (ẋ(t), ż(t)). Throws ConstructionError if the quadrature does not reach
/// `quad_tol`.
BarycenterCheck loop_barycenter_check(const LoopFamily& family, double t, double quad_tol);

/// Grid maxima over domain × S¹ used by the error bounds.
struct LoopNorms {
  /// ‖γ‖_{C⁰} + ‖∂ₜγ‖_{C⁰} + ‖∂ₛγ‖_{C⁰}.
  double gamma_c1 = 0.0;
  /// Same for the scalar γ₂.
  double gamma2_c1 = 0.0;
  double gamma_c0 = 0.0;
  double gamma1_c0 = 0.0;
};

LoopNorms loop_norms(const LoopFamily& family, int t_grid, int s_grid);

/// Worst ample-set margin of γ(t, s) over a t_grid × s_grid scan (SIMD path).
double membership_margin(const LoopFamily& family, double eps, int t_grid, int s_grid);

struct ApproxOptions {
  /// Multiplier ≥ 1.25 applied against grid under-estimation of sup-norms.
  double safety = 1.25;
  int grid_size = 400;
  int s_grid = 256;
  std::optional<double> r_override;
  std::optional<std::int64_t> n_override;
  /// Closed curves: n ≥ kappa·r².
  double kappa = 2.0 / 9.0;
  int panels_per_period = 2;
  int gauss_order = 12;
  int max_iterations = 60;

  void validate() const;
};

/// Smallest r (doubling from 1, then bisection) with
/// 2·M·max(1, r + X)/r² ≤ ε/σ, M = max|ż − yẋ|, X = max|ẋ| on the grid, then
/// confirmed by a (t, s) membership scan.
double choose_radius(const ParamCurve& target, double eps, const ApproxOptions& options = {});

/// n = ⌈σ·B·Ĉ/ε⌉ where B·Ĉ/n is the a-priori (a, c) error bound for `kind`.
std::int64_t choose_frequency(const ParamCurve& target, const LoopFamily& family, double eps,
                              CurveKind kind = CurveKind::open,
                              const ApproxOptions& options = {});

/// A-priori bound on ‖(a, c) − (x, z)‖_{C⁰}:
///   open:   (2π/n)·max(L, 4)·‖γ‖_{C¹}   (= 4π²‖γ‖_{C¹}/n on [0, 2π]),
///   closed: twice the open bound.
double error_bound(const ApproxParams& params, double gamma_c1, CurveKind kind,
                   double domain_length = kTwoPi);

/// Legendrian curve with ‖b − y‖ ≤ ε and ‖(a, c) − (x, z)‖ ≤ ε starting at
/// (x, z)(t₀). a, c come from the cumulative integral of γ(u, nu); b is the
/// closed form y + k·γ₁(t, nt).
LegendrianCurve approximate_open(const ParamCurve& target, double eps,
                                 const ApproxOptions& options = {});

/// Closed variant for periodic targets on [0, 2π]: c is corrected by
/// I₂·f with f = g/‖g‖_{L¹}, g = γ₁²(t, nt), so that (a, b, c) closes up.
LegendrianCurve approximate_closed(const ParamCurve& target, double eps,
                                   const ApproxOptions& options = {});

}  // namespace legendrian
