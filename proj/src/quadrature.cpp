#include "legendrian/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

#include "legendrian/kernels.hpp"

namespace legendrian {

namespace {

template <int N>
GaussRule make_rule() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      pts.emplace_back(0.0, w[i]);
    } else {
      pts.emplace_back(-x[i], w[i]);
      pts.emplace_back(x[i], w[i]);
    }
  }
  std::sort(pts.begin(), pts.end());
  GaussRule rule;
  for (auto [node, weight] : pts) {
    rule.nodes.push_back(node);
    rule.weights.push_back(weight);
  }
  return rule;
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

const GaussRule& GaussRule::get(int order) {
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r12 = make_rule<12>();
  static const GaussRule r16 = make_rule<16>();
  static const GaussRule r20 = make_rule<20>();
  switch (order) {
    case 8:
      return r8;
    case 12:
      return r12;
    case 16:
      return r16;
    case 20:
      return r20;
    default:
      throw std::invalid_argument("GaussRule: unsupported order");
  }
}

PanelLayout oscillation_aligned(Interval domain, std::int64_t n, int panels_per_period, int order,
                                std::int64_t min_panels) {
  if (n < 1 || panels_per_period < 1) {
    throw std::invalid_argument("oscillation_aligned: n and panels_per_period must be positive");
  }
  const double periods = domain.length() * static_cast<double>(n) / kTwoPi;
  const auto aligned =
      static_cast<std::int64_t>(std::ceil(periods * panels_per_period - 1e-9));
  PanelLayout layout;
  layout.domain = domain;
  layout.panels = std::max(aligned, min_panels);
  layout.order = order;
  layout.stride = panels_per_period;
  return layout;
}

CumulativeIntegral::CumulativeIntegral(BatchIntegrand f, PanelLayout layout)
    : f_(std::move(f)), layout_(layout) {
  if (layout_.panels < 1 || layout_.stride < 1) {
    throw std::invalid_argument("CumulativeIntegral: invalid panel layout");
  }
  if (!(layout_.domain.length() > 0.0)) {
    throw std::invalid_argument("CumulativeIntegral: empty domain");
  }
  const GaussRule& rule = GaussRule::get(layout_.order);
  width_ = layout_.domain.length() / static_cast<double>(layout_.panels);

  const std::size_t m = rule.nodes.size();
  constexpr std::int64_t kBatch = 64;
  std::vector<double> t(kBatch * m), f0(t.size()), f1(t.size()), f2(t.size());
  std::vector<double> scaled(m);
  CompensatedSum s0, s1, s2;
  checkpoints_.reserve(static_cast<std::size_t>(layout_.panels / layout_.stride + 2));
  checkpoints_.push_back(Vec3{});

  for (std::int64_t first = 0; first < layout_.panels; first += kBatch) {
    const std::int64_t count = std::min(kBatch, layout_.panels - first);
    const std::size_t nodes = static_cast<std::size_t>(count) * m;
    for (std::int64_t p = 0; p < count; ++p) {
      const double left = layout_.domain.begin + width_ * static_cast<double>(first + p);
      for (std::size_t j = 0; j < m; ++j) {
        t[p * m + j] = left + 0.5 * width_ * (rule.nodes[j] + 1.0);
      }
    }
    f_(std::span<const double>(t.data(), nodes), std::span(f0.data(), nodes),
       std::span(f1.data(), nodes), std::span(f2.data(), nodes));
    for (std::size_t j = 0; j < m; ++j) scaled[j] = 0.5 * width_ * rule.weights[j];
    for (std::int64_t p = 0; p < count; ++p) {
      const std::size_t off = static_cast<std::size_t>(p) * m;
      s0.add(kernels::dot(scaled, std::span<const double>(f0.data() + off, m)));
      s1.add(kernels::dot(scaled, std::span<const double>(f1.data() + off, m)));
      s2.add(kernels::dot(scaled, std::span<const double>(f2.data() + off, m)));
      if ((first + p + 1) % layout_.stride == 0) {
        checkpoints_.push_back(Vec3{s0.value(), s1.value(), s2.value()});
      }
    }
  }
  total_ = Vec3{s0.value(), s1.value(), s2.value()};
}

void CumulativeIntegral::integrate_panels(std::span<const std::int64_t> panels,
                                          double last_fraction, Vec3& out) const {
  const GaussRule& rule = GaussRule::get(layout_.order);
  const std::size_t m = rule.nodes.size();
  const std::size_t nodes = panels.size() * m;
  std::vector<double> t(nodes), f0(nodes), f1(nodes), f2(nodes);
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double left = layout_.domain.begin + width_ * static_cast<double>(panels[p]);
    const double w = (p + 1 == panels.size()) ? width_ * last_fraction : width_;
    for (std::size_t j = 0; j < m; ++j) t[p * m + j] = left + 0.5 * w * (rule.nodes[j] + 1.0);
  }
  f_(t, f0, f1, f2);
  std::vector<double> scaled(m);
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double w = (p + 1 == panels.size()) ? width_ * last_fraction : width_;
    for (std::size_t j = 0; j < m; ++j) scaled[j] = 0.5 * w * rule.weights[j];
    const std::size_t off = p * m;
    out.x += kernels::dot(scaled, std::span<const double>(f0.data() + off, m));
    out.y += kernels::dot(scaled, std::span<const double>(f1.data() + off, m));
    out.z += kernels::dot(scaled, std::span<const double>(f2.data() + off, m));
  }
}

Vec3 CumulativeIntegral::at(double t) const {
  const Interval& d = layout_.domain;
  if (t <= d.begin) return Vec3{};
  if (t >= d.end) return total_;
  const double pos = (t - d.begin) / width_;
  std::int64_t k = std::min(static_cast<std::int64_t>(pos), layout_.panels - 1);
  double fraction = pos - static_cast<double>(k);
  const std::int64_t j = k / layout_.stride;
  Vec3 out = checkpoints_[static_cast<std::size_t>(j)];
  if (fraction <= 0.0) {
    if (k == j * layout_.stride) return out;
    // Whole panels only: treat panel k-1 as a full final panel.
    --k;
    fraction = 1.0;
  }
  std::vector<std::int64_t> panels;
  for (std::int64_t p = j * layout_.stride; p <= k; ++p) panels.push_back(p);
  integrate_panels(panels, fraction, out);
  return out;
}

}  // namespace legendrian
