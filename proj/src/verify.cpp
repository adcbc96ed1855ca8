#include "legendrian/verify.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <queue>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace legendrian::verify {

namespace {

// Full (symmetric) G7/K15 node set on [-1, 1].
struct KronrodRule {
  std::vector<double> nodes;
  std::vector<double> kronrod;
  std::vector<double> gauss;  // zero for Kronrod-only nodes

  static const KronrodRule& instance() {
    static const KronrodRule rule = [] {
      using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
      const auto& x = GK::abscissa();
      const auto& wk = GK::weights();
      const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
      KronrodRule r;
      // Abscissae alternate Gauss (even index) / Kronrod (odd index), x[0] = 0.
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double g = (i % 2 == 0) ? wg[i / 2] : 0.0;
        if (x[i] == 0.0) {
          r.nodes.push_back(0.0);
          r.kronrod.push_back(wk[i]);
          r.gauss.push_back(g);
        } else {
          for (double sgn : {-1.0, 1.0}) {
            r.nodes.push_back(sgn * x[i]);
            r.kronrod.push_back(wk[i]);
            r.gauss.push_back(g);
          }
        }
      }
      return r;
    }();
    return rule;
  }
};

template <class Value>
struct Segment {
  double a;
  double b;
  Value value;
  double error;
};

template <class Value, class F, class Norm>
auto adaptive(const F& f, double a, double b, double tol, std::int64_t max_evaluations,
              Norm norm) {
  if (!(a <= b)) throw std::invalid_argument("quad_oracle: require a <= b");
  if (!(tol > 0.0)) throw std::invalid_argument("quad_oracle: tol must be positive");
  const KronrodRule& rule = KronrodRule::instance();
  std::int64_t evaluations = 0;

  auto apply = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    Value k{}, g{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const Value fx = f(mid + half * rule.nodes[i]);
      k = k + (half * rule.kronrod[i]) * fx;
      g = g + (half * rule.gauss[i]) * fx;
    }
    evaluations += static_cast<std::int64_t>(rule.nodes.size());
    return Segment<Value>{lo, hi, k, norm(k - g)};
  };

  using Seg = Segment<Value>;
  auto worse = [](const Seg& x, const Seg& y) {
    // Largest error first; ties broken by position for determinism.
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<Seg, std::vector<Seg>, decltype(worse)> heap(worse);

  if (a == b) return std::tuple<Value, double, std::int64_t>{Value{}, 0.0, 0};
  constexpr int kInitial = 16;
  double total_error = 0.0;
  for (int i = 0; i < kInitial; ++i) {
    const double lo = a + (b - a) * i / kInitial;
    const double hi = (i + 1 == kInitial) ? b : a + (b - a) * (i + 1) / kInitial;
    Seg s = apply(lo, hi);
    total_error += s.error;
    heap.push(s);
  }
  while (total_error > tol) {
    if (evaluations >= max_evaluations) {
      throw ConstructionError("quad_oracle: evaluation budget exhausted before reaching tolerance");
    }
    Seg worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConstructionError("quad_oracle: interval cannot be subdivided further");
    }
    Seg left = apply(worst.a, mid);
    Seg right = apply(mid, worst.b);
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 256 == 0) {
      // Drift control for the running error sum.
      total_error = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        total_error += copy.top().error;
        copy.pop();
      }
    }
  }
  // Sum in position order for a deterministic result.
  std::vector<Seg> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
  Value value{};
  double err = 0.0;
  for (const Seg& s : all) {
    value = value + s.value;
    err += s.error;
  }
  return std::tuple<Value, double, std::int64_t>{value, err, evaluations};
}

struct Scalar {
  double v = 0.0;
  friend Scalar operator+(Scalar a, Scalar b) { return {a.v + b.v}; }
  friend Scalar operator-(Scalar a, Scalar b) { return {a.v - b.v}; }
  friend Scalar operator*(double s, Scalar a) { return {s * a.v}; }
};

}  // namespace

QuadResult quad_oracle(const std::function<double(double)>& f, double a, double b, double tol,
                       std::int64_t max_evaluations) {
  auto wrapped = [&](double x) { return Scalar{f(x)}; };
  auto [value, err, evals] = adaptive<Scalar>(wrapped, a, b, tol, max_evaluations,
                                              [](Scalar s) { return std::abs(s.v); });
  return {value.v, err, evals};
}

QuadResult2 quad_oracle2(const std::function<Vec2(double)>& f, double a, double b, double tol,
                         std::int64_t max_evaluations) {
  auto [value, err, evals] = adaptive<Vec2>(
      f, a, b, tol, max_evaluations, [](Vec2 v) { return std::max(std::abs(v.u), std::abs(v.v)); });
  return {value, err, evals};
}

double fd_derivative(const std::function<double(double)>& f, double t, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_derivative: h must be positive");
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

double c0_distance(const std::function<Vec3(double)>& f, const std::function<Vec3(double)>& g,
                   Interval domain, int grid_size) {
  double best = 0.0;
  for (double t : uniform_grid(domain, grid_size)) best = std::max(best, (f(t) - g(t)).norm());
  return best;
}

bool endpoint_jet_match(const ParamCurve& curve, int order, double tol, double h) {
  if (order < 0) throw std::invalid_argument("endpoint_jet_match: order must be >= 0");
  if (order > 3) throw std::invalid_argument("endpoint_jet_match: orders above 3 unsupported");
  const double t0 = curve.domain().begin;
  const double t1 = curve.domain().end;
  auto close = [tol](Vec3 a, Vec3 b) {
    const Vec3 d = a - b;
    return std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)}) <= tol;
  };
  if (!close(curve.eval(t0), curve.eval(t1))) return false;
  if (order >= 1 && !close(curve.deriv(t0), curve.deriv(t1))) return false;
  // One-sided second-order stencils applied to deriv().
  auto v = [&](double t) { return curve.deriv(t); };
  if (order >= 2) {
    const Vec3 fwd = (1.0 / (2.0 * h)) * ((-3.0) * v(t0) + 4.0 * v(t0 + h) - v(t0 + 2 * h));
    const Vec3 bwd = (1.0 / (2.0 * h)) * (3.0 * v(t1) - 4.0 * v(t1 - h) + v(t1 - 2 * h));
    if (!close(fwd, bwd)) return false;
  }
  if (order >= 3) {
    const double h2 = h * h;
    const Vec3 fwd = (1.0 / h2) * (2.0 * v(t0) - 5.0 * v(t0 + h) + 4.0 * v(t0 + 2 * h) -
                                   v(t0 + 3 * h));
    const Vec3 bwd = (1.0 / h2) * (2.0 * v(t1) - 5.0 * v(t1 - h) + 4.0 * v(t1 - 2 * h) -
                                   v(t1 - 3 * h));
    if (!close(fwd, bwd)) return false;
  }
  return true;
}

double membership_scan(const LoopFamily& family, double eps, std::span<const double> t_grid,
                       std::span<const double> s_grid) {
  double worst = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const AmpleSet set{family.target().eval(t).y, eps};
    for (double s : s_grid) {
      const Vec2 g = family.eval(t, s);
      worst = std::min(worst, ample_contains(set, g.u, g.v).margin);
    }
  }
  return worst;
}

}  // namespace legendrian::verify
