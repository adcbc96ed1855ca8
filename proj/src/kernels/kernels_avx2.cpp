// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "legendrian/kernels.hpp"

namespace legendrian::kernels::detail {
namespace {

inline __m256d vabs(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

inline double hmax(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double hmin(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

inline double hsum(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

void loop_components(std::size_t n, const double* cos_phase, const double* xdot, const double* y,
                     const double* coef, double r, double* g1, double* g2) {
  const __m256d vr = _mm256_set1_pd(r);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u = _mm256_fmadd_pd(vr, _mm256_loadu_pd(cos_phase + i), _mm256_loadu_pd(xdot + i));
    const __m256d w = _mm256_fmadd_pd(_mm256_loadu_pd(coef + i), u, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(g1 + i, u);
    _mm256_storeu_pd(g2 + i, _mm256_mul_pd(u, w));
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
  if (n >= 4) {
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d ve = _mm256_set1_pd(eps);
    __m256d acc = _mm256_set1_pd(best);
    for (; i + 4 <= n; i += 4) {
      const __m256d uu = _mm256_loadu_pd(u + i);
      const __m256d au = vabs(uu);
      const __m256d lim = _mm256_mul_pd(ve, _mm256_min_pd(au, _mm256_mul_pd(au, au)));
      const __m256d dev = vabs(_mm256_sub_pd(_mm256_loadu_pd(v + i), _mm256_mul_pd(vy, uu)));
      acc = _mm256_min_pd(acc, _mm256_sub_pd(lim, dev));
    }
    best = hmin(acc);
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
  if (n >= 4) {
    const __m256d r = _mm256_set1_pd(p.r);
    const __m256d nr = _mm256_set1_pd(-p.r);
    const __m256d xd = _mm256_set1_pd(p.xdot);
    const __m256d xdd = _mm256_set1_pd(p.xddot);
    const __m256d y = _mm256_set1_pd(p.y);
    const __m256d yd = _mm256_set1_pd(p.ydot);
    const __m256d k = _mm256_set1_pd(p.k);
    const __m256d k2 = _mm256_set1_pd(2.0 * p.k);
    const __m256d kd = _mm256_set1_pd(p.kdot);
    const __m256d kxdd = _mm256_set1_pd(p.k * p.xddot);
    const __m256d dt1sq = _mm256_set1_pd(p.xddot * p.xddot);
    __m256d pos = _mm256_setzero_pd(), dt = pos, ds = pos, pos2 = pos, dt2m = pos, ds2m = pos;
    for (; i + 4 <= n; i += 4) {
      const __m256d g1 = _mm256_fmadd_pd(r, _mm256_loadu_pd(cos_s + i), xd);
      const __m256d w = _mm256_fmadd_pd(k, g1, y);
      const __m256d g2 = _mm256_mul_pd(g1, w);
      const __m256d inner = _mm256_add_pd(_mm256_fmadd_pd(kd, g1, yd), kxdd);
      const __m256d dt2 = _mm256_fmadd_pd(g1, inner, _mm256_mul_pd(xdd, w));
      const __m256d ds1 = _mm256_mul_pd(nr, _mm256_loadu_pd(sin_s + i));
      const __m256d ds2 = _mm256_mul_pd(ds1, _mm256_fmadd_pd(k2, g1, y));
      pos = _mm256_max_pd(pos, _mm256_sqrt_pd(_mm256_fmadd_pd(g2, g2, _mm256_mul_pd(g1, g1))));
      dt = _mm256_max_pd(dt, _mm256_sqrt_pd(_mm256_fmadd_pd(dt2, dt2, dt1sq)));
      ds = _mm256_max_pd(ds, _mm256_sqrt_pd(_mm256_fmadd_pd(ds2, ds2, _mm256_mul_pd(ds1, ds1))));
      pos2 = _mm256_max_pd(pos2, vabs(g2));
      dt2m = _mm256_max_pd(dt2m, vabs(dt2));
      ds2m = _mm256_max_pd(ds2m, vabs(ds2));
    }
    m = {hmax(pos), hmax(dt), hmax(ds), hmax(pos2), hmax(dt2m), hmax(ds2m)};
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
  if (n >= 4) {
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      const __m256d x = _mm256_loadu_pd(a + i);
      const __m256d y = _mm256_loadu_pd(b + i);
      acc = _mm256_max_pd(acc, _mm256_sqrt_pd(_mm256_fmadd_pd(y, y, _mm256_mul_pd(x, x))));
    }
    best = hmax(acc);
  }
  for (; i < n; ++i) best = std::max(best, std::sqrt(a[i] * a[i] + b[i] * b[i]));
  return best;
}

double max_hypot3(std::size_t n, const double* a, const double* b, const double* c) {
  double best = 0.0;
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      const __m256d x = _mm256_loadu_pd(a + i);
      const __m256d y = _mm256_loadu_pd(b + i);
      const __m256d z = _mm256_loadu_pd(c + i);
      const __m256d s = _mm256_fmadd_pd(z, z, _mm256_fmadd_pd(y, y, _mm256_mul_pd(x, x)));
      acc = _mm256_max_pd(acc, _mm256_sqrt_pd(s));
    }
    best = hmax(acc);
  }
  for (; i < n; ++i) {
    best = std::max(best, std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]));
  }
  return best;
}

double max_abs_diff(std::size_t n, const double* a, const double* b) {
  double best = 0.0;
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      acc = _mm256_max_pd(acc, vabs(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))));
    }
    best = hmax(acc);
  }
  for (; i < n; ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double dot(std::size_t n, const double* a, const double* b) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const Table& avx2_table() {
  static const Table t{loop_components, ample_min_margin, loop_jet_max, max_hypot2,
                       max_hypot3,      max_abs_diff,     dot};
  return t;
}

}  // namespace legendrian::kernels::detail
