// aarch64 Advanced SIMD variants (two doubles per lane group).

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "legendrian/kernels.hpp"

namespace legendrian::kernels::detail {
namespace {

void loop_components(std::size_t n, const double* cos_phase, const double* xdot, const double* y,
                     const double* coef, double r, double* g1, double* g2) {
  const float64x2_t vr = vdupq_n_f64(r);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t u = vfmaq_f64(vld1q_f64(xdot + i), vr, vld1q_f64(cos_phase + i));
    const float64x2_t w = vfmaq_f64(vld1q_f64(y + i), vld1q_f64(coef + i), u);
    vst1q_f64(g1 + i, u);
    vst1q_f64(g2 + i, vmulq_f64(u, w));
  }
  for (; i < n; ++i) {
    const double u = r * cos_phase[i] + xdot[i];
    g1[i] = u;
    g2[i] = u * (y[i] + coef[i] * u);
  }
}

double ample_min_margin(std::size_t n, const double* u, const double* v, double y, double eps) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 2) {
    const float64x2_t vy = vdupq_n_f64(y);
    const float64x2_t ve = vdupq_n_f64(eps);
    float64x2_t acc = vdupq_n_f64(best);
    for (; i + 2 <= n; i += 2) {
      const float64x2_t uu = vld1q_f64(u + i);
      const float64x2_t au = vabsq_f64(uu);
      const float64x2_t lim = vmulq_f64(ve, vminq_f64(au, vmulq_f64(au, au)));
      const float64x2_t dev = vabsq_f64(vfmsq_f64(vld1q_f64(v + i), vy, uu));
      acc = vminq_f64(acc, vsubq_f64(lim, dev));
    }
    best = vminvq_f64(acc);
  }
  for (; i < n; ++i) {
    const double au = std::abs(u[i]);
    best = std::min(best, eps * std::min(au, au * au) - std::abs(v[i] - y * u[i]));
  }
  return best;
}

LoopJetMax loop_jet_max(std::size_t n, const double* cos_s, const double* sin_s,
                        const LoopPoint& p) {
  LoopJetMax m;
  std::size_t i = 0;
  if (n >= 2) {
    const float64x2_t r = vdupq_n_f64(p.r);
    const float64x2_t nr = vdupq_n_f64(-p.r);
    const float64x2_t xd = vdupq_n_f64(p.xdot);
    const float64x2_t xdd = vdupq_n_f64(p.xddot);
    const float64x2_t y = vdupq_n_f64(p.y);
    const float64x2_t yd = vdupq_n_f64(p.ydot);
    const float64x2_t k = vdupq_n_f64(p.k);
    const float64x2_t k2 = vdupq_n_f64(2.0 * p.k);
    const float64x2_t kd = vdupq_n_f64(p.kdot);
    const float64x2_t kxdd = vdupq_n_f64(p.k * p.xddot);
    const float64x2_t dt1sq = vdupq_n_f64(p.xddot * p.xddot);
    float64x2_t pos = vdupq_n_f64(0.0), dt = pos, ds = pos, pos2 = pos, dt2m = pos, ds2m = pos;
    for (; i + 2 <= n; i += 2) {
      const float64x2_t g1 = vfmaq_f64(xd, r, vld1q_f64(cos_s + i));
      const float64x2_t w = vfmaq_f64(y, k, g1);
      const float64x2_t g2 = vmulq_f64(g1, w);
      const float64x2_t inner = vaddq_f64(vfmaq_f64(yd, kd, g1), kxdd);
      const float64x2_t dt2 = vfmaq_f64(vmulq_f64(xdd, w), g1, inner);
      const float64x2_t ds1 = vmulq_f64(nr, vld1q_f64(sin_s + i));
      const float64x2_t ds2 = vmulq_f64(ds1, vfmaq_f64(y, k2, g1));
      pos = vmaxq_f64(pos, vsqrtq_f64(vfmaq_f64(vmulq_f64(g1, g1), g2, g2)));
      dt = vmaxq_f64(dt, vsqrtq_f64(vfmaq_f64(dt1sq, dt2, dt2)));
      ds = vmaxq_f64(ds, vsqrtq_f64(vfmaq_f64(vmulq_f64(ds1, ds1), ds2, ds2)));
      pos2 = vmaxq_f64(pos2, vabsq_f64(g2));
      dt2m = vmaxq_f64(dt2m, vabsq_f64(dt2));
      ds2m = vmaxq_f64(ds2m, vabsq_f64(ds2));
    }
    m = {vmaxvq_f64(pos), vmaxvq_f64(dt),   vmaxvq_f64(ds),
         vmaxvq_f64(pos2), vmaxvq_f64(dt2m), vmaxvq_f64(ds2m)};
  }
  for (; i < n; ++i) {
    const double g1 = p.r * cos_s[i] + p.xdot;
    const double w = p.y + p.k * g1;
    const double g2 = g1 * w;
    const double dt1 = p.xddot;
    const double dt2 = p.xddot * w + g1 * (p.ydot + p.kdot * g1 + p.k * p.xddot);
    const double ds1 = -p.r * sin_s[i];
    const double ds2 = ds1 * (p.y + 2.0 * p.k * g1);
    m.pos = std::max(m.pos, std::sqrt(g1 * g1 + g2 * g2));
    m.dt = std::max(m.dt, std::sqrt(dt1 * dt1 + dt2 * dt2));
    m.ds = std::max(m.ds, std::sqrt(ds1 * ds1 + ds2 * ds2));
    m.pos2 = std::max(m.pos2, std::abs(g2));
    m.dt2 = std::max(m.dt2, std::abs(dt2));
    m.ds2 = std::max(m.ds2, std::abs(ds2));
  }
  return m;
}

double max_hypot2(std::size_t n, const double* a, const double* b) {
  double best = 0.0;
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
      const float64x2_t x = vld1q_f64(a + i);
      const float64x2_t y = vld1q_f64(b + i);
      acc = vmaxq_f64(acc, vsqrtq_f64(vfmaq_f64(vmulq_f64(x, x), y, y)));
    }
    best = vmaxvq_f64(acc);
  }
  for (; i < n; ++i) best = std::max(best, std::sqrt(a[i] * a[i] + b[i] * b[i]));
  return best;
}

double max_hypot3(std::size_t n, const double* a, const double* b, const double* c) {
  double best = 0.0;
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
      const float64x2_t x = vld1q_f64(a + i);
      const float64x2_t y = vld1q_f64(b + i);
      const float64x2_t z = vld1q_f64(c + i);
      acc = vmaxq_f64(acc, vsqrtq_f64(vfmaq_f64(vfmaq_f64(vmulq_f64(x, x), y, y), z, z)));
    }
    best = vmaxvq_f64(acc);
  }
  for (; i < n; ++i) {
    best = std::max(best, std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]));
  }
  return best;
}

double max_abs_diff(std::size_t n, const double* a, const double* b) {
  double best = 0.0;
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
      acc = vmaxq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    best = vmaxvq_f64(acc);
  }
  for (; i < n; ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double dot(std::size_t n, const double* a, const double* b) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const Table& neon_table() {
  static const Table t{loop_components, ample_min_margin, loop_jet_max, max_hypot2,
                       max_hypot3,      max_abs_diff,     dot};
  return t;
}

}  // namespace legendrian::kernels::detail
