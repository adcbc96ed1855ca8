#include <algorithm>
#include <cmath>
#include <limits>

#include "legendrian/kernels.hpp"

namespace legendrian::kernels::detail {
namespace {

void loop_components(std::size_t n, const double* cos_phase, const double* xdot, const double* y,
                     const double* coef, double r, double* g1, double* g2) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u = r * cos_phase[i] + xdot[i];
    g1[i] = u;
    g2[i] = u * (y[i] + coef[i] * u);
  }
}

double ample_min_margin(std::size_t n, const double* u, const double* v, double y, double eps) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double au = std::abs(u[i]);
    const double margin = eps * std::min(au, au * au) - std::abs(v[i] - y * u[i]);
    best = std::min(best, margin);
  }
  return best;
}

LoopJetMax loop_jet_max(std::size_t n, const double* cos_s, const double* sin_s,
                        const LoopPoint& p) {
  LoopJetMax m;
  for (std::size_t i = 0; i < n; ++i) {
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
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::sqrt(a[i] * a[i] + b[i] * b[i]));
  return best;
}

double max_hypot3(std::size_t n, const double* a, const double* b, const double* c) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    best = std::max(best, std::sqrt(a[i] * a[i] + b[i] * b[i] + c[i] * c[i]));
  }
  return best;
}

double max_abs_diff(std::size_t n, const double* a, const double* b) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double dot(std::size_t n, const double* a, const double* b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{loop_components, ample_min_margin, loop_jet_max, max_hypot2,
                       max_hypot3,      max_abs_diff,     dot};
  return t;
}

}  // namespace legendrian::kernels::detail
