#include "legendrian/targets.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace legendrian::targets {

ParamCurve helix() {
  return ParamCurve([](double t) { return Vec3{t, std::cos(5 * t), std::sin(5 * t)}; },
                    [](double t) { return Vec3{1.0, -5 * std::sin(5 * t), 5 * std::cos(5 * t)}; },
                    [](double t) {
                      return Vec3{0.0, -25 * std::cos(5 * t), -25 * std::sin(5 * t)};
                    },
                    Interval{}, false, "helix");
}

ParamCurve parking() {
  return ParamCurve([](double t) { return Vec3{0.0, 0.0, t}; },
                    [](double) { return Vec3{0.0, 0.0, 1.0}; }, [](double) { return Vec3{}; },
                    Interval{}, false, "parking");
}

ParamCurve circle() {
  return ParamCurve([](double t) { return Vec3{std::cos(t), std::sin(t), 0.0}; },
                    [](double t) { return Vec3{-std::sin(t), std::cos(t), 0.0}; },
                    [](double t) { return Vec3{-std::cos(t), -std::sin(t), 0.0}; }, Interval{},
                    true, "circle");
}

ParamCurve line(Interval domain) {
  return ParamCurve([](double t) { return Vec3{t, 0.0, 0.0}; },
                    [](double) { return Vec3{1.0, 0.0, 0.0}; }, [](double) { return Vec3{}; },
                    domain, false, "line");
}

ParamCurve sine_reference(Interval domain) {
  return ParamCurve([](double t) { return Vec3{t, 0.0, std::sin(t)}; },
                    [](double t) { return Vec3{1.0, 0.0, std::cos(t)}; },
                    [](double t) { return Vec3{0.0, 0.0, -std::sin(t)}; }, domain, false,
                    "sine");
}

namespace {

struct TrigPoly {
  // coef[axis] = {c0, a1, b1, a2, b2, ...}, already divided by k².
  std::array<std::vector<double>, 3> coef;
  double drift = 0.0;

  template <int Order>
  Vec3 eval(double t) const {
    double out[3] = {0.0, 0.0, 0.0};
    const std::size_t degree = (coef[0].size() - 1) / 2;
    for (std::size_t k = 1; k <= degree; ++k) {
      const double kk = static_cast<double>(k);
      const double c = std::cos(kk * t);
      const double s = std::sin(kk * t);
      for (int axis = 0; axis < 3; ++axis) {
        const double a = coef[axis][2 * k - 1];
        const double b = coef[axis][2 * k];
        if constexpr (Order == 0) out[axis] += a * c + b * s;
        if constexpr (Order == 1) out[axis] += kk * (b * c - a * s);
        if constexpr (Order == 2) out[axis] -= kk * kk * (a * c + b * s);
      }
    }
    if constexpr (Order == 0) {
      for (int axis = 0; axis < 3; ++axis) out[axis] += coef[axis][0];
      out[0] += drift * t;
    }
    if constexpr (Order == 1) out[0] += drift;
    return {out[0], out[1], out[2]};
  }
};

}  // namespace

ParamCurve random_trig(std::uint64_t seed, Interval domain, int degree, double amplitude,
                       bool periodic) {
  if (degree < 1) throw std::invalid_argument("random_trig: degree must be >= 1");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("random_trig: amplitude must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(-amplitude, amplitude);
  auto poly = std::make_shared<TrigPoly>();
  for (int axis = 0; axis < 3; ++axis) {
    poly->coef[axis].push_back(coin(rng));
    for (int k = 1; k <= degree; ++k) {
      const double scale = 1.0 / (static_cast<double>(k) * k);
      poly->coef[axis].push_back(coin(rng) * scale);
      poly->coef[axis].push_back(coin(rng) * scale);
    }
  }
  if (!periodic) poly->drift = 1.0 + 0.5 * std::abs(coin(rng));
  std::shared_ptr<const TrigPoly> p = poly;
  return ParamCurve([p](double t) { return p->eval<0>(t); },
                    [p](double t) { return p->eval<1>(t); },
                    [p](double t) { return p->eval<2>(t); }, domain, periodic,
                    "trig:" + std::to_string(seed));
}

}  // namespace legendrian::targets
