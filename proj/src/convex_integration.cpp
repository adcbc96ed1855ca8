#include "legendrian/convex_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "legendrian/kernels.hpp"
#include "legendrian/quadrature.hpp"
#include "legendrian/verify.hpp"

namespace legendrian {

namespace {

double loop_coefficient(double r, double xdot, double y, double zdot) {
  return 2.0 * (zdot - y * xdot) / (r * r + 2.0 * xdot * xdot);
}

std::vector<double> angle_grid(int count) {
  std::vector<double> s(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) s[i] = kTwoPi * i / count;
  return s;
}

// n·t, and for closed curves n·(t − 2π) on the second half of the period so
// that both ends of the domain see the same rounded phase.
struct Phase {
  double frequency;
  bool closed;
  double split;

  double operator()(double t) const {
    return closed && t > split ? frequency * (t - kTwoPi) : frequency * t;
  }
};

// Samples γ(u, nu) (and optionally γ₁²) at quadrature nodes.
struct LoopSampler {
  ParamCurve target;
  double r;
  Phase phase_of;
  bool with_square;

  void operator()(std::span<const double> t, std::span<double> f0, std::span<double> f1,
                  std::span<double> f2) const {
    const std::size_t m = t.size();
    std::vector<double> phase(m), xdot(m), y(m), coef(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3 p = target.eval(t[i]);
      const Vec3 v = target.deriv(t[i]);
      phase[i] = std::cos(phase_of(t[i]));
      xdot[i] = v.x;
      y[i] = p.y;
      coef[i] = loop_coefficient(r, v.x, p.y, v.z);
    }
    kernels::loop_components(phase, xdot, y, coef, r, f0, f1);
    if (with_square) {
      for (std::size_t i = 0; i < m; ++i) f2[i] = f0[i] * f0[i];
    } else {
      std::fill(f2.begin(), f2.end(), 0.0);
    }
  }
};

// Shared state behind the evaluators of an open or closed construction.
// `correction` is I₂/‖g‖_{L¹} for closed curves and 0 for open ones.
class Construction {
 public:
  Construction(const ParamCurve& target, double r, std::int64_t n, bool closed,
               const ApproxOptions& options)
      : target_(target),
        r_(r),
        freq_(static_cast<double>(n)),
        phase_{freq_, closed, target.domain().begin + kPi},
        integral_(LoopSampler{target, r, phase_, closed},
                  oscillation_aligned(target.domain(), n, options.panels_per_period,
                                      options.gauss_order)) {
    const Vec3 start = target.eval(target.domain().begin);
    x0_ = start.x;
    z0_ = start.z;
    if (closed) {
      i2_ = integral_.total().y;
      g_l1_ = integral_.total().z;
      if (!(g_l1_ > 1e-300)) {
        throw ConstructionError("approximate_closed: ‖g‖_L1 below positivity floor");
      }
      correction_ = i2_ / g_l1_;
    }
  }

  Vec3 eval(double t) const {
    const Vec3 acc = integral_.at(t);
    const Vec3 p = target_.eval(t);
    const Vec3 v = target_.deriv(t);
    const double k = loop_coefficient(r_, v.x, p.y, v.z);
    const double g1 = r_ * std::cos(phase_(t)) + v.x;
    return {x0_ + acc.x, p.y + g1 * (k - correction_), z0_ + acc.y - correction_ * acc.z};
  }

  Vec3 deriv(double t) const {
    const Vec3 p = target_.eval(t);
    const Vec3 v = target_.deriv(t);
    const Vec3 w = target_.second(t);
    const double num = v.z - p.y * v.x;
    const double num_dot = w.z - v.y * v.x - p.y * w.x;
    const double den = r_ * r_ + 2.0 * v.x * v.x;
    const double den_dot = 4.0 * v.x * w.x;
    const double k = 2.0 * num / den;
    const double k_dot = 2.0 * (num_dot * den - num * den_dot) / (den * den);
    const double phase = phase_(t);
    const double g1 = r_ * std::cos(phase) + v.x;
    const double g1_dot = -r_ * freq_ * std::sin(phase) + w.x;
    const double g2 = g1 * (p.y + k * g1);
    return {g1, v.y + g1_dot * (k - correction_) + g1 * k_dot, g2 - correction_ * g1 * g1};
  }

  // sup over phase of |b − y| = (r + |ẋ|)·|k − correction| on a t grid.
  double b_deviation_bound(int grid_size) const {
    double best = 0.0;
    for (double t : uniform_grid(target_.domain(), grid_size)) {
      const Vec3 p = target_.eval(t);
      const Vec3 v = target_.deriv(t);
      const double k = loop_coefficient(r_, v.x, p.y, v.z);
      best = std::max(best, (r_ + std::abs(v.x)) * std::abs(k - correction_));
    }
    return best;
  }

  double i2() const { return i2_; }
  double g_l1() const { return g_l1_; }

 private:
  ParamCurve target_;
  double r_;
  double freq_;
  Phase phase_;
  CumulativeIntegral integral_;
  double x0_ = 0.0;
  double z0_ = 0.0;
  double i2_ = 0.0;
  double g_l1_ = 0.0;
  double correction_ = 0.0;
};

LegendrianCurve wrap(std::shared_ptr<const Construction> c, const ParamCurve& target,
                     ApproxParams params, CurveKind kind, Provenance meta) {
  ParamCurve path([c](double t) { return c->eval(t); }, [c](double t) { return c->deriv(t); },
                  {}, target.domain(), kind == CurveKind::closed,
                  std::string(to_string(kind)) + ":" + target.name());
  return LegendrianCurve(std::move(path), params, kind, std::move(meta));
}

void require_eps(double eps, const char* who) {
  if (!(eps > 0.0)) throw std::invalid_argument(std::string(who) + ": eps must be positive");
}

}  // namespace

Membership ample_contains(const AmpleSet& set, double u, double v) {
  const double au = std::abs(u);
  const double margin = set.eps * std::min(au, au * au) - std::abs(v - set.y_t * u);
  return {margin >= 0.0, margin};
}

LoopFamily::LoopFamily(ParamCurve target, double r) : target_(std::move(target)), r_(r) {
  if (!(r > 0.0)) throw std::invalid_argument("LoopFamily: r must be positive");
}

double LoopFamily::coefficient(double t) const {
  const Vec3 p = target_.eval(t);
  const Vec3 v = target_.deriv(t);
  return loop_coefficient(r_, v.x, p.y, v.z);
}

Vec2 LoopFamily::eval(double t, double s) const {
  const Vec3 p = target_.eval(t);
  const Vec3 v = target_.deriv(t);
  const double k = loop_coefficient(r_, v.x, p.y, v.z);
  const double g1 = r_ * std::cos(s) + v.x;
  return {g1, g1 * (p.y + k * g1)};
}

kernels::LoopPoint LoopFamily::jet_point(double t) const {
  const Vec3 p = target_.eval(t);
  const Vec3 v = target_.deriv(t);
  const Vec3 w = target_.second(t);
  const double num = v.z - p.y * v.x;
  const double num_dot = w.z - v.y * v.x - p.y * w.x;
  const double den = r_ * r_ + 2.0 * v.x * v.x;
  const double den_dot = 4.0 * v.x * w.x;
  kernels::LoopPoint lp;
  lp.r = r_;
  lp.xdot = v.x;
  lp.xddot = w.x;
  lp.y = p.y;
  lp.ydot = v.y;
  lp.k = 2.0 * num / den;
  lp.kdot = 2.0 * (num_dot * den - num * den_dot) / (den * den);
  return lp;
}

Vec2 loop_eval(const LoopFamily& family, double t, double s) { return family.eval(t, s); }

BarycenterCheck loop_barycenter_check(const LoopFamily& family, double t, double quad_tol) {
  if (!(quad_tol > 0.0)) throw std::invalid_argument("loop_barycenter_check: quad_tol must be positive");
  // The mean is the integral divided by 2π; ask for a proportionally tighter integral.
  const auto q = verify::quad_oracle2([&](double s) { return family.eval(t, s); }, 0.0, kTwoPi,
                                      0.25 * quad_tol * kTwoPi);
  const Vec2 mean = (1.0 / kTwoPi) * q.value;
  const Vec3 v = family.target().deriv(t);
  return {mean, (mean - Vec2{v.x, v.z}).norm()};
}

LoopNorms loop_norms(const LoopFamily& family, int t_grid, int s_grid) {
  const auto s = angle_grid(s_grid);
  std::vector<double> cs(s.size()), sn(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    cs[i] = std::cos(s[i]);
    sn[i] = std::sin(s[i]);
  }
  kernels::LoopJetMax total;
  double xdot_max = 0.0;
  for (double t : uniform_grid(family.target().domain(), t_grid)) {
    const kernels::LoopPoint lp = family.jet_point(t);
    const kernels::LoopJetMax m = kernels::loop_jet_max(cs, sn, lp);
    total.pos = std::max(total.pos, m.pos);
    total.dt = std::max(total.dt, m.dt);
    total.ds = std::max(total.ds, m.ds);
    total.pos2 = std::max(total.pos2, m.pos2);
    total.dt2 = std::max(total.dt2, m.dt2);
    total.ds2 = std::max(total.ds2, m.ds2);
    xdot_max = std::max(xdot_max, std::abs(lp.xdot));
  }
  LoopNorms norms;
  norms.gamma_c1 = total.pos + total.dt + total.ds;
  norms.gamma2_c1 = total.pos2 + total.dt2 + total.ds2;
  norms.gamma_c0 = total.pos;
  norms.gamma1_c0 = family.r() + xdot_max;
  return norms;
}

double membership_margin(const LoopFamily& family, double eps, int t_grid, int s_grid) {
  const auto s = angle_grid(s_grid);
  const std::size_t m = s.size();
  std::vector<double> cs(m), xdot(m), y(m), coef(m), g1(m), g2(m);
  for (std::size_t i = 0; i < m; ++i) cs[i] = std::cos(s[i]);
  double worst = std::numeric_limits<double>::infinity();
  for (double t : uniform_grid(family.target().domain(), t_grid)) {
    const Vec3 p = family.target().eval(t);
    const Vec3 v = family.target().deriv(t);
    std::fill(xdot.begin(), xdot.end(), v.x);
    std::fill(y.begin(), y.end(), p.y);
    std::fill(coef.begin(), coef.end(), loop_coefficient(family.r(), v.x, p.y, v.z));
    kernels::loop_components(cs, xdot, y, coef, family.r(), g1, g2);
    worst = std::min(worst, kernels::ample_min_margin(g1, g2, p.y, eps));
  }
  return worst;
}

void ApproxOptions::validate() const {
  if (!(safety >= 1.25)) throw std::invalid_argument("ApproxOptions: safety factor must be >= 1.25");
  if (grid_size < 2 || s_grid < 4) throw std::invalid_argument("ApproxOptions: grid too small");
  if (r_override && !(*r_override > 0.0)) throw std::invalid_argument("ApproxOptions: r must be positive");
  if (n_override && *n_override < 1) throw std::invalid_argument("ApproxOptions: n must be >= 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("ApproxOptions: kappa must be positive");
}

double choose_radius(const ParamCurve& target, double eps, const ApproxOptions& options) {
  require_eps(eps, "choose_radius");
  options.validate();
  if (options.r_override) return *options.r_override;

  double defect = 0.0;  // M = max |ż − yẋ|
  double speed = 0.0;   // X = max |ẋ|
  double height = 0.0;
  for (double t : uniform_grid(target.domain(), options.grid_size)) {
    const Vec3 p = target.eval(t);
    const Vec3 v = target.deriv(t);
    defect = std::max(defect, std::abs(v.z - p.y * v.x));
    speed = std::max(speed, std::abs(v.x));
    height = std::max(height, std::abs(p.y));
  }
  const double budget = eps / options.safety;
  auto sufficient = [&](double r) {
    return 2.0 * defect * std::max(1.0, r + speed) / (r * r) <= budget;
  };

  double r = 1.0;
  if (defect > 0.0 && !sufficient(r)) {
    int iterations = 0;
    while (!sufficient(r)) {
      if (++iterations > options.max_iterations) {
        throw ConstructionError("choose_radius: doubling search exceeded its iteration cap");
      }
      r *= 2.0;
    }
    double lo = r / 2.0;
    double hi = r;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (sufficient(mid) ? hi : lo) = mid;
    }
    r = hi;
  }

  for (int attempt = 0; attempt < options.max_iterations; ++attempt) {
    const LoopFamily family(target, r);
    const double scale = (r + speed) * (r + speed) * (1.0 + height);
    if (membership_margin(family, eps, options.grid_size, options.s_grid) >= -1e-12 * scale) {
      return r;
    }
    r *= 1.1;
  }
  throw ConstructionError("choose_radius: membership scan failed for every tried radius");
}

double error_bound(const ApproxParams& params, double gamma_c1, CurveKind kind,
                   double domain_length) {
  if (!(gamma_c1 >= 0.0)) throw std::invalid_argument("error_bound: gamma_c1 must be >= 0");
  if (params.n < 1) throw std::invalid_argument("error_bound: n must be >= 1");
  const double open = kTwoPi / static_cast<double>(params.n) * std::max(domain_length, 4.0) *
                      gamma_c1;
  return kind == CurveKind::closed ? 2.0 * open : open;
}

std::int64_t choose_frequency(const ParamCurve& target, const LoopFamily& family, double eps,
                              CurveKind kind, const ApproxOptions& options) {
  require_eps(eps, "choose_frequency");
  options.validate();
  if (options.n_override) return *options.n_override;
  const LoopNorms norms = loop_norms(family, options.grid_size, options.s_grid);
  // error_bound is proportional to 1/n; solve bound(n)·σ ≤ ε.
  const double unit = error_bound(ApproxParams{eps, family.r(), 1}, norms.gamma_c1, kind,
                                  target.domain().length());
  const double n = std::ceil(options.safety * unit / eps);
  if (!(n < 9.0e15)) throw ConstructionError("choose_frequency: frequency overflow");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

LegendrianCurve approximate_open(const ParamCurve& target, double eps,
                                 const ApproxOptions& options) {
  require_eps(eps, "approximate_open");
  options.validate();
  const double r = choose_radius(target, eps, options);
  const LoopFamily family(target, r);
  const LoopNorms norms = loop_norms(family, options.grid_size, options.s_grid);
  const std::int64_t n = choose_frequency(target, family, eps, CurveKind::open, options);
  const ApproxParams params{eps, r, n};

  auto c = std::make_shared<const Construction>(target, r, n, false, options);
  Provenance meta;
  meta.target = target.name();
  meta.gamma_c1 = norms.gamma_c1;
  meta.ac_bound = error_bound(params, norms.gamma_c1, CurveKind::open, target.domain().length());
  return wrap(std::move(c), target, params, CurveKind::open, std::move(meta));
}

LegendrianCurve approximate_closed(const ParamCurve& target, double eps,
                                   const ApproxOptions& options) {
  require_eps(eps, "approximate_closed");
  options.validate();
  if (!target.periodic()) {
    throw std::invalid_argument("approximate_closed: target must be periodic");
  }
  if (std::abs(target.domain().length() - kTwoPi) > 1e-9) {
    throw std::invalid_argument("approximate_closed: target domain must have length 2π");
  }
  double r = choose_radius(target, eps, options);
  const bool pinned = options.r_override.has_value() || options.n_override.has_value();
  for (int iteration = 0; iteration < options.max_iterations; ++iteration) {
    const LoopFamily family(target, r);
    const LoopNorms norms = loop_norms(family, options.grid_size, options.s_grid);
    std::int64_t n = choose_frequency(target, family, eps, CurveKind::closed, options);
    if (!options.n_override) {
      n = std::max<std::int64_t>(n, static_cast<std::int64_t>(std::ceil(options.kappa * r * r)));
    }
    auto c = std::make_shared<const Construction>(target, r, n, true, options);
    const bool close_enough = c->b_deviation_bound(options.grid_size) <= eps / options.safety;
    if (pinned || close_enough) {
      const ApproxParams params{eps, r, n};
      Provenance meta;
      meta.target = target.name();
      meta.gamma_c1 = norms.gamma_c1;
      meta.i2 = c->i2();
      meta.g_l1 = c->g_l1();
      meta.ac_bound = error_bound(params, norms.gamma_c1, CurveKind::closed);
      return wrap(std::move(c), target, params, CurveKind::closed, std::move(meta));
    }
    r *= 1.25;
  }
  throw ConstructionError("approximate_closed: no radius met the b-closeness requirement");
}

}  // namespace legendrian
