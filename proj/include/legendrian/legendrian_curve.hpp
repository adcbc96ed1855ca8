#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "legendrian/curve.hpp"

namespace legendrian {

/// Construction parameters: closeness ε, loop amplitude r, oscillation frequency n.
struct ApproxParams {
  double eps = 0.0;
  double r = 0.0;
  std::int64_t n = 1;

  /// Throws std::invalid_argument unless eps > 0, r > 0 and n ≥ 1.
  void validate() const;
};

enum class CurveKind { open, closed, glued };

std::string_view to_string(CurveKind kind);

struct Provenance {
  std::string target;
  /// Closed curves: I₂ = ∫γ₂(u, nu) du and ‖g‖_{L¹} with g = γ₁²(t, nt).
  std::optional<double> i2;
  std::optional<double> g_l1;
  /// Grid estimate of ‖γ‖_{C¹} over domain × S¹.
  double gamma_c1 = 0.0;
  /// A-priori bound on ‖(a,c) − (x,z)‖_{C⁰}.
  double ac_bound = std::numeric_limits<double>::infinity();
};

/// Output curve (a, b, c) with ċ = b·ȧ. The components are exposed through a
/// ParamCurve whose eval() returns (a, b, c) and deriv() returns (ȧ, ḃ, ċ).
class LegendrianCurve {
 public:
  LegendrianCurve(ParamCurve path, ApproxParams params, CurveKind kind, Provenance meta)
      : path_(std::move(path)), params_(params), kind_(kind), meta_(std::move(meta)) {}

  Vec3 eval(double t) const { return path_.eval(t); }
  Vec3 deriv(double t) const { return path_.deriv(t); }

  const ParamCurve& path() const { return path_; }
  const Interval& domain() const { return path_.domain(); }
  const ApproxParams& params() const { return params_; }
  CurveKind kind() const { return kind_; }
  const Provenance& meta() const { return meta_; }

 private:
  ParamCurve path_;
  ApproxParams params_;
  CurveKind kind_;
  Provenance meta_;
};

}  // namespace legendrian
