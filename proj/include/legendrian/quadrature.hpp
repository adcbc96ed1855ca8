#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "legendrian/types.hpp"

namespace legendrian {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Supported orders: 8, 12, 16, 20.
  static const GaussRule& get(int order);
};

/// Fills f0, f1, f2 with the three integrand components at each t.
using BatchIntegrand = std::function<void(std::span<const double> t, std::span<double> f0,
                                          std::span<double> f1, std::span<double> f2)>;

struct PanelLayout {
  Interval domain;
  std::int64_t panels = 64;
  int order = 12;
  /// Prefix sums are cached every `stride` panels.
  int stride = 2;
};

/// Uniform panels on `domain`, `panels_per_period` per oscillation period 2π/n,
/// never fewer than `min_panels`. On [0, 2π] panel edges fall on the period
/// boundaries 2πk/n.
PanelLayout oscillation_aligned(Interval domain, std::int64_t n, int panels_per_period = 2,
                                int order = 12, std::int64_t min_panels = 64);

/// Cumulative integral t ↦ ∫_{begin}^{t} f of a three-component integrand by a
/// composite Gauss–Legendre rule. Construction costs one pass over all panels;
/// a query costs at most `stride` + 1 panels of integrand evaluations.
class CumulativeIntegral {
 public:
  CumulativeIntegral(BatchIntegrand f, PanelLayout layout);

  Vec3 at(double t) const;
  Vec3 total() const { return total_; }
  const PanelLayout& layout() const { return layout_; }
  double panel_width() const { return width_; }

 private:
  // Integral over [t_k, t_k + fraction·w] for each requested panel k.
  void integrate_panels(std::span<const std::int64_t> panels, double last_fraction,
                        Vec3& out) const;

  BatchIntegrand f_;
  PanelLayout layout_;
  double width_;
  std::vector<Vec3> checkpoints_;
  Vec3 total_;
};

}  // namespace legendrian
