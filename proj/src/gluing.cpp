#include "legendrian/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace legendrian {

namespace {

constexpr double kLoopSafety = 1.25;
constexpr double kBumpRate = 0.25;

PanelLayout loop_layout() {
  PanelLayout layout;
  layout.domain = Interval{0.0, 1.0};
  layout.panels = 256;
  layout.order = 20;
  layout.stride = 1;
  return layout;
}

// ψ(τ) = exp(λ(4 − 1/(τ(1−τ)))) on (0, 1), zero outside; ψ(1/2) = 1.
double bump(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  return std::exp(kBumpRate * (4.0 - 1.0 / (tau * (1.0 - tau))));
}

double bump_deriv(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  const double q = tau * (1.0 - tau);
  return bump(tau) * kBumpRate * (1.0 - 2.0 * tau) / (q * q);
}

double integer_power(double x, int k) {
  double result = 1.0;
  double base = x;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

struct LoopShape {
  double y0;
  double alpha;
  double amplitude;
  double k;

  double g1(double tau) const {
    return bump(tau) * (alpha + amplitude * std::sin(kTwoPi * tau));
  }
  double g1_deriv(double tau) const {
    const double phase = kTwoPi * tau;
    return bump_deriv(tau) * (alpha + amplitude * std::sin(phase)) +
           bump(tau) * kTwoPi * amplitude * std::cos(phase);
  }
};

}  // namespace

bool ConeSet::contains(Vec2 p, double slack) const {
  return std::abs(p.v - y0 * p.u) <= eps * std::abs(p.u) + slack;
}

double radius_w(double y0, double eps) {
  const double a = std::abs(y0) + eps;
  return std::sqrt((1.0 + y0 * y0) * (1.0 + a * a));
}

double radius_R(double r, double y0, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("radius_R: eps must be positive");
  const double r0 = eps / std::sqrt(1.0 + y0 * y0);
  if (!(r > r0)) throw std::invalid_argument("radius_R: r must exceed eps/sqrt(1 + y0^2)");
  return r / eps * radius_w(y0, eps);
}

double hull_radius_exact(double r, double y0, double eps) {
  if (!(eps > 0.0) || !(r > 0.0)) {
    throw std::invalid_argument("hull_radius_exact: r and eps must be positive");
  }
  const double opening = std::atan(y0 + eps) - std::atan(y0 - eps);
  return r / std::sin(0.5 * opening);
}

void GlueProblem::validate() const {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("GlueProblem: eps must lie in (0, 1/2)");
  const Interval& I = reference.domain();
  if (!(I.begin < 0.0 && I.end > 0.0)) {
    throw std::invalid_argument("GlueProblem: overlap interval must contain 0 in its interior");
  }
  if (check_grid < 2) throw std::invalid_argument("GlueProblem: check_grid too small");
  for (const LegendrianCurve* arc : {&sigma, &tau}) {
    const Interval& d = arc->domain();
    if (d.begin > I.begin + 1e-12 || d.end < I.end - 1e-12) {
      throw std::invalid_argument("GlueProblem: arcs must be defined on the overlap interval");
    }
    double worst = 0.0;
    for (double t : uniform_grid(I, check_grid)) {
      worst = std::max(worst, (arc->eval(t) - reference.eval(t)).norm());
    }
    if (!(worst < eps * eps)) {
      throw std::invalid_argument("GlueProblem: arc is not within eps^2 of the reference (distance " +
                                  std::to_string(worst) + ")");
    }
  }
}

DeltaChoice choose_delta(const GlueProblem& problem) {
  problem.validate();
  const Interval& I = problem.reference.domain();
  const double e2 = problem.eps * problem.eps;
  const double c1 = c1_norm(problem.reference, problem.check_grid);
  double base = std::min(e2, std::min(-I.begin, I.end));
  if (c1 > 0.0) base = std::min(base, e2 / c1);
  base *= 0.9;

  auto nondegenerate = [](Vec3 d) {
    return std::abs(d.x) >= 1e-6 * (1.0 + std::hypot(d.x, d.z));
  };
  for (int j = 0; j <= 100; ++j) {
    const double delta = base * (1.0 - 0.001 * j);
    if (nondegenerate(problem.sigma.deriv(-delta)) && nondegenerate(problem.tau.deriv(delta))) {
      return {delta, 0.25 * delta};
    }
  }
  throw ConstructionError("choose_delta: junction derivatives vanish for every admissible delta");
}

ConnectorRamp::ConnectorRamp(Vec2 endpoint_deriv, double y0, double rho, int k, RampSide side)
    : u_(endpoint_deriv.u),
      y0_(y0),
      gap_(endpoint_deriv.v - y0 * endpoint_deriv.u),
      rho_(rho),
      k_(k),
      side_(side) {
  if (u_ == 0.0) throw std::invalid_argument("connector_ramp: endpoint derivative has zero first component");
  if (!(rho > 0.0)) throw std::invalid_argument("connector_ramp: rho must be positive");
  if (k < 1) throw std::invalid_argument("connector_ramp: k must be >= 1");
}

double ConnectorRamp::theta(double s) const {
  const double x = std::clamp(s / rho_, 0.0, 1.0);
  return side_ == RampSide::left ? 1.0 - x : x;
}

Vec2 ConnectorRamp::value(double s) const {
  const double tk = integer_power(theta(s), k_);
  return {tk * u_, tk * (y0_ * u_ + gap_ * tk)};
}

Vec2 ConnectorRamp::value_deriv(double s) const {
  const double th = theta(s);
  const double dth = (side_ == RampSide::left ? -1.0 : 1.0) / rho_;
  const double tk = integer_power(th, k_);
  const double dtk = k_ * integer_power(th, k_ - 1) * dth;
  return {dtk * u_, dtk * (y0_ * u_ + 2.0 * gap_ * tk)};
}

Vec2 ConnectorRamp::integral(double s) const {
  const double th = theta(s);
  const double k1 = k_ + 1.0;
  const double k2 = 2.0 * k_ + 1.0;
  double ik;
  double i2k;
  if (side_ == RampSide::left) {
    ik = rho_ * (1.0 - integer_power(th, k_ + 1)) / k1;
    i2k = rho_ * (1.0 - integer_power(th, 2 * k_ + 1)) / k2;
  } else {
    ik = rho_ * integer_power(th, k_ + 1) / k1;
    i2k = rho_ * integer_power(th, 2 * k_ + 1) / k2;
  }
  return {u_ * ik, y0_ * u_ * ik + gap_ * i2k};
}

double ConnectorRamp::slope(double s) const {
  return y0_ + gap_ / u_ * integer_power(theta(s), k_);
}

double ConnectorRamp::slope_deriv(double s) const {
  const double dth = (side_ == RampSide::left ? -1.0 : 1.0) / rho_;
  return gap_ / u_ * k_ * integer_power(theta(s), k_ - 1) * dth;
}

double ConnectorRamp::mass_bound() const {
  return rho_ * (std::abs(u_) * (1.0 + std::abs(y0_)) / (k_ + 1.0) +
                 std::abs(gap_) / (2.0 * k_ + 1.0));
}

ConnectorRamp connector_ramp(Vec2 endpoint_deriv, double y0, double rho, int k, RampSide side) {
  return ConnectorRamp(endpoint_deriv, y0, rho, k, side);
}

int choose_ramp_exponent(Vec2 endpoint_deriv, double y0, double rho, double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("choose_ramp_exponent: budget must be positive");
  for (int k = 1; k <= (1 << 30); k *= 2) {
    if (ConnectorRamp(endpoint_deriv, y0, rho, k, RampSide::left).mass_bound() < budget) return k;
    if (k == (1 << 30)) break;
  }
  throw ConstructionError("choose_ramp_exponent: no k up to 2^30 meets the mass budget");
}

Vec2 BarycenterLoop::eval(double tau) const {
  const LoopShape shape{y0_, alpha_, amplitude_, k_};
  const double g1 = shape.g1(tau);
  return {g1, g1 * (y0_ + k_ * g1)};
}

Vec2 BarycenterLoop::deriv(double tau) const {
  const LoopShape shape{y0_, alpha_, amplitude_, k_};
  const double g1 = shape.g1(tau);
  const double d1 = shape.g1_deriv(tau);
  return {d1, d1 * (y0_ + 2.0 * k_ * g1)};
}

double BarycenterLoop::slope(double tau) const {
  const LoopShape shape{y0_, alpha_, amplitude_, k_};
  return y0_ + k_ * shape.g1(tau);
}

double BarycenterLoop::slope_deriv(double tau) const {
  const LoopShape shape{y0_, alpha_, amplitude_, k_};
  return k_ * shape.g1_deriv(tau);
}

Vec2 BarycenterLoop::integral(double tau) const {
  const Vec3 v = integral_->at(tau);
  return {v.x, v.y};
}

Vec2 BarycenterLoop::mean() const {
  const Vec3 v = integral_->total();
  return {v.x, v.y};
}

BarycenterLoop barycenter_loop(Vec2 pbar, double y0, double eps, double r_cap) {
  if (!(eps > 0.0)) throw std::invalid_argument("barycenter_loop: eps must be positive");
  if (!(r_cap > 0.0)) throw std::invalid_argument("barycenter_loop: R_cap must be positive");
  const PanelLayout layout = loop_layout();

  const CumulativeIntegral moments(
      [](std::span<const double> t, std::span<double> f0, std::span<double> f1,
         std::span<double> f2) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          const double psi = bump(t[i]);
          const double sn = std::sin(kTwoPi * t[i]);
          f0[i] = psi;
          f1[i] = psi * psi;
          f2[i] = psi * psi * sn * sn;
        }
      },
      layout);
  const double m0 = moments.total().x;
  const double m2 = moments.total().y;
  const double s2 = moments.total().z;

  BarycenterLoop loop;
  loop.target_ = pbar;
  loop.y0_ = y0;
  loop.alpha_ = pbar.u / m0;
  const double excess = pbar.v - y0 * pbar.u;
  const double a = loop.alpha_;
  const double budget = eps / kLoopSafety;
  if (excess != 0.0) {
    auto admissible = [&](double amp) {
      const double q = a * a * m2 + amp * amp * s2;
      return q > 0.0 && std::abs(excess) * std::max(1.0, std::abs(a) + amp) / q <= budget;
    };
    double amp = 0.0;
    if (!admissible(0.0)) {
      double hi = 1.0;
      int guard = 0;
      while (!admissible(hi)) {
        if (++guard > 2000) throw ConstructionError("barycenter_loop: amplitude search diverged");
        hi *= 2.0;
      }
      double lo = 0.0;
      for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? hi : lo) = mid;
      }
      amp = hi;
    }
    loop.amplitude_ = amp;
    loop.k_ = excess / (a * a * m2 + amp * amp * s2);
  }

  const LoopShape shape{y0, loop.alpha_, loop.amplitude_, loop.k_};
  loop.integral_ = std::make_shared<const CumulativeIntegral>(
      [shape](std::span<const double> t, std::span<double> f0, std::span<double> f1,
              std::span<double> f2) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          const double g1 = shape.g1(t[i]);
          f0[i] = g1;
          f1[i] = g1 * (shape.y0 + shape.k * g1);
          f2[i] = 0.0;
        }
      },
      layout);

  constexpr int kScan = 4001;
  for (int i = 0; i < kScan; ++i) {
    loop.max_norm_ = std::max(loop.max_norm_, loop.eval(static_cast<double>(i) / (kScan - 1)).norm());
  }
  if (loop.max_norm_ > r_cap) {
    throw ConstructionError("barycenter_loop: loop leaves B(R_cap) by " +
                            std::to_string(loop.max_norm_ - r_cap));
  }
  return loop;
}

namespace {

class GluedPath {
 public:
  GluedPath(const Connector& c, ConnectorRamp left, ConnectorRamp right, BarycenterLoop loop)
      : c_(c), left_(left), right_(right), loop_(std::move(loop)) {
    span_ = 2.0 * (c.delta - c.rho);
    left_total_ = left_.total();
    middle_total_ = span_ * loop_.mean();
  }

  Vec3 eval(double t) const {
    t = std::clamp(t, -c_.delta, c_.delta);
    Vec2 acc;
    double b;
    if (t <= -c_.delta + c_.rho) {
      const double s = t + c_.delta;
      acc = left_.integral(s);
      b = left_.slope(s);
    } else if (t < c_.delta - c_.rho) {
      const double tau = (t + c_.delta - c_.rho) / span_;
      acc = left_total_ + span_ * loop_.integral(tau);
      b = loop_.slope(tau);
    } else {
      const double s = t - (c_.delta - c_.rho);
      acc = left_total_ + middle_total_ + right_.integral(s);
      b = right_.slope(s);
    }
    return {c_.p1.u + acc.u, b, c_.p1.v + acc.v};
  }

  Vec3 deriv(double t) const {
    t = std::clamp(t, -c_.delta, c_.delta);
    Vec2 g;
    double bdot;
    if (t <= -c_.delta + c_.rho) {
      const double s = t + c_.delta;
      g = left_.value(s);
      bdot = left_.slope_deriv(s);
    } else if (t < c_.delta - c_.rho) {
      const double tau = (t + c_.delta - c_.rho) / span_;
      g = loop_.eval(tau);
      bdot = loop_.slope_deriv(tau) / span_;
    } else {
      const double s = t - (c_.delta - c_.rho);
      g = right_.value(s);
      bdot = right_.slope_deriv(s);
    }
    return {g.u, bdot, g.v};
  }

 private:
  Connector c_;
  ConnectorRamp left_;
  ConnectorRamp right_;
  BarycenterLoop loop_;
  double span_ = 0.0;
  Vec2 left_total_;
  Vec2 middle_total_;
};

}  // namespace

GlueResult glue(const GlueProblem& problem) {
  const DeltaChoice dc = choose_delta(problem);
  const double eps = problem.eps;

  Connector c;
  c.delta = dc.delta;
  c.rho = dc.rho;
  c.y0 = problem.reference.eval(0.0).y;
  const Vec3 s0 = problem.sigma.eval(-c.delta);
  const Vec3 s1 = problem.sigma.deriv(-c.delta);
  const Vec3 t0 = problem.tau.eval(c.delta);
  const Vec3 t1 = problem.tau.deriv(c.delta);
  c.p1 = {s0.x, s0.z};
  c.p1_dot = {s1.x, s1.z};
  c.p2 = {t0.x, t0.z};
  c.p2_dot = {t1.x, t1.z};
  c.p = (1.0 / (2.0 * c.delta)) * (c.p2 - c.p1);
  c.r_bar = 2.0 * eps * eps / c.delta;
  c.r_cap = radius_R(3.0 * c.r_bar, c.y0, eps);

  const ConeSet cone{c.y0, eps};
  for (Vec2 d : {c.p1_dot, c.p2_dot}) {
    if (!cone.contains(d, 1e-12 * (1.0 + d.norm()))) {
      throw ConstructionError("glue: junction derivative lies outside the cone C_eps");
    }
  }

  const double budget = 0.5 * c.delta * eps;
  c.k = std::max(choose_ramp_exponent(c.p1_dot, c.y0, c.rho, budget),
                 choose_ramp_exponent(c.p2_dot, c.y0, c.rho, budget));
  const ConnectorRamp left(c.p1_dot, c.y0, c.rho, c.k, RampSide::left);
  const ConnectorRamp right(c.p2_dot, c.y0, c.rho, c.k, RampSide::right);
  c.left_mass_bound = left.mass_bound();
  c.right_mass_bound = right.mass_bound();

  const double span = 2.0 * (c.delta - c.rho);
  c.pbar = (1.0 / span) * (2.0 * c.delta * c.p - left.total() - right.total());
  BarycenterLoop loop = barycenter_loop(c.pbar, c.y0, eps, c.r_cap);
  c.loop_r = loop.amplitude();

  auto state = std::make_shared<const GluedPath>(c, left, right, std::move(loop));
  ParamCurve path([state](double t) { return state->eval(t); },
                  [state](double t) { return state->deriv(t); }, {},
                  Interval{-c.delta, c.delta}, false, "glued:" + problem.reference.name());
  Provenance meta;
  meta.target = problem.reference.name();
  const double spread = std::abs(c.y0) + 0.5;
  meta.ac_bound = eps * (14.0 + 12.0 * spread * spread);
  ApproxParams params{eps, c.r_cap, c.k};
  GlueResult result{LegendrianCurve(std::move(path), params, CurveKind::glued, std::move(meta)), c,
                    [state](double t) {
                      const Vec3 d = state->deriv(t);
                      return Vec2{d.x, d.z};
                    }};
  return result;
}

}  // namespace legendrian
