#include "legendrian/curve.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

namespace legendrian {

ParamCurve::ParamCurve(Evaluator position, Evaluator velocity, Evaluator acceleration,
                       Interval domain, bool periodic, std::string name)
    : position_(std::move(position)),
      velocity_(std::move(velocity)),
      acceleration_(std::move(acceleration)),
      domain_(domain),
      periodic_(periodic),
      name_(std::move(name)) {
  if (!position_ || !velocity_) {
    throw std::invalid_argument("ParamCurve: position and velocity evaluators are required");
  }
  if (!(domain_.end > domain_.begin)) {
    throw std::invalid_argument("ParamCurve: empty domain");
  }
}

Vec3 ParamCurve::second(double t) const {
  if (acceleration_) return acceleration_(t);
  const double h = 1e-5 * std::max(1.0, std::abs(t));
  return (1.0 / (2.0 * h)) * (velocity_(t + h) - velocity_(t - h));
}

ParamCurve ParamCurve::renamed(std::string name) const {
  ParamCurve copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

void SampledCurve::validate() const {
  if (samples.size() < 4) {
    throw std::invalid_argument("SampledCurve: at least 4 samples are required");
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].t > samples[i - 1].t)) {
      throw std::invalid_argument("SampledCurve: parameter values must be strictly increasing");
    }
  }
  if (periodic && (samples.front().t < 0.0 || samples.back().t > kTwoPi + 1e-12)) {
    throw std::invalid_argument("SampledCurve: periodic samples must lie in [0, 2π]");
  }
}

namespace {

// Unnormalized bump exp(-1/(1-x²)) on (-1, 1).
double bump(double x) {
  const double q = 1.0 - x * x;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

// Tabulated cumulative mass Φ(x) = ∫_{-1}^{x} ψ/Z and first moment
// M(x) = ∫_{-1}^{x} sψ/Z, interpolated by cubic Hermite with exact slopes.
class KernelTable {
 public:
  static const KernelTable& instance() {
    static const KernelTable table;
    return table;
  }

  double density(double x) const { return bump(x) / mass_; }

  double cdf(double x) const { return lookup(x, cdf_, [](double) { return 1.0; }); }
  double moment(double x) const { return lookup(x, moment_, [](double s) { return s; }); }

 private:
  static constexpr int kCells = 4096;

  KernelTable() {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    cdf_.assign(kCells + 1, 0.0);
    moment_.assign(kCells + 1, 0.0);
    const double h = 2.0 / kCells;
    for (int i = 0; i < kCells; ++i) {
      const double a = -1.0 + h * i;
      const double b = a + h;
      const double m0 = Rule::integrate([](double s) { return bump(s); }, a, b);
      const double m1 = Rule::integrate([](double s) { return s * bump(s); }, a, b);
      cdf_[i + 1] = cdf_[i] + m0;
      moment_[i + 1] = moment_[i] + m1;
    }
    mass_ = cdf_.back();
    for (int i = 0; i <= kCells; ++i) {
      cdf_[i] /= mass_;
      moment_[i] /= mass_;
    }
  }

  template <class Weight>
  double lookup(double x, const std::vector<double>& table, Weight weight) const {
    if (x <= -1.0) return table.front();
    if (x >= 1.0) return table.back();
    const double h = 2.0 / kCells;
    const double pos = (x + 1.0) / h;
    const int i = std::min(static_cast<int>(pos), kCells - 1);
    const double s = pos - i;
    const double x0 = -1.0 + h * i;
    const double x1 = x0 + h;
    const double d0 = weight(x0) * density(x0) * h;
    const double d1 = weight(x1) * density(x1) * h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * table[i] + (s3 - 2 * s2 + s) * d0 +
           (-2 * s3 + 3 * s2) * table[i + 1] + (s3 - s2) * d1;
  }

  std::vector<double> cdf_;
  std::vector<double> moment_;
  double mass_ = 1.0;
};

// Piecewise-linear interpolant with constant extension beyond its end knots.
struct Polyline {
  std::vector<double> t;
  std::vector<Vec3> p;
  std::vector<Vec3> slope;  // slope[j] on [t[j], t[j+1]]

  void finalize() {
    slope.resize(t.size() - 1);
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      slope[j] = (1.0 / (t[j + 1] - t[j])) * (p[j + 1] - p[j]);
    }
  }

  // Slope to the left/right of knot i, zero outside the knot range.
  Vec3 slope_left(std::size_t i) const { return i == 0 ? Vec3{} : slope[i - 1]; }
  Vec3 slope_right(std::size_t i) const { return i + 1 < t.size() ? slope[i] : Vec3{}; }
};

class Mollified {
 public:
  Mollified(Polyline line, double bandwidth, bool periodic, double period_origin)
      : line_(std::move(line)), h_(bandwidth), periodic_(periodic), origin_(period_origin) {}

  Vec3 value(double t) const {
    t = wrap(t);
    const auto& k = KernelTable::instance();
    Vec3 acc;
    for_each_piece(t, [&](double s_lo, double s_hi, int seg) {
      const double m0 = k.cdf(s_hi / h_) - k.cdf(s_lo / h_);
      const double m1 = h_ * (k.moment(s_hi / h_) - k.moment(s_lo / h_));
      if (seg < 0) {
        acc = acc + m0 * line_.p.front();
      } else if (seg >= static_cast<int>(line_.slope.size())) {
        acc = acc + m0 * line_.p.back();
      } else {
        const Vec3 base = line_.p[seg] + (t - line_.t[seg]) * line_.slope[seg];
        acc = acc + m0 * base - m1 * line_.slope[seg];
      }
    });
    return acc;
  }

  Vec3 deriv(double t) const {
    t = wrap(t);
    const auto& k = KernelTable::instance();
    Vec3 acc;
    for_each_piece(t, [&](double s_lo, double s_hi, int seg) {
      if (seg < 0 || seg >= static_cast<int>(line_.slope.size())) return;
      acc = acc + (k.cdf(s_hi / h_) - k.cdf(s_lo / h_)) * line_.slope[seg];
    });
    return acc;
  }

  Vec3 second(double t) const {
    t = wrap(t);
    const auto& k = KernelTable::instance();
    Vec3 acc;
    const auto lo = std::upper_bound(line_.t.begin(), line_.t.end(), t - h_);
    const auto hi = std::lower_bound(line_.t.begin(), line_.t.end(), t + h_);
    for (auto it = lo; it != hi; ++it) {
      const auto i = static_cast<std::size_t>(it - line_.t.begin());
      const Vec3 jump = line_.slope_right(i) - line_.slope_left(i);
      acc = acc + (k.density((t - line_.t[i]) / h_) / h_) * jump;
    }
    return acc;
  }

 private:
  double wrap(double t) const {
    if (!periodic_) return t;
    double w = std::fmod(t - origin_, kTwoPi);
    if (w < 0) w += kTwoPi;
    return origin_ + w;
  }

  // Splits the kernel support s ∈ [-h, h] at the knots so that t - s stays in
  // one linear segment per piece; seg = -1 before the first knot.
  template <class F>
  void for_each_piece(double t, F&& f) const {
    const auto& knots = line_.t;
    const auto lo = std::upper_bound(knots.begin(), knots.end(), t - h_);
    const auto hi = std::lower_bound(knots.begin(), knots.end(), t + h_);
    // Knots in (t-h, t+h), visited with decreasing s = t - knot.
    double s_hi = h_;
    int seg = static_cast<int>(lo - knots.begin()) - 1;
    for (auto it = lo; it != hi; ++it) {
      const double s = t - *it;
      f(s, s_hi, seg);
      s_hi = s;
      ++seg;
    }
    f(-h_, s_hi, seg);
  }

  Polyline line_;
  double h_;
  bool periodic_;
  double origin_;
};

}  // namespace

ParamCurve mollify(const SampledCurve& raw, double bandwidth) {
  raw.validate();
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("mollify: bandwidth must be positive");
  }
  Polyline line;
  Interval domain{raw.samples.front().t, raw.samples.back().t};
  double origin = 0.0;
  if (raw.periodic) {
    if (bandwidth >= kPi) {
      throw std::invalid_argument("mollify: periodic bandwidth must be below π");
    }
    std::vector<Sample> base = raw.samples;
    if (std::abs(base.back().t - (base.front().t + kTwoPi)) < 1e-12) base.pop_back();
    origin = base.front().t;
    for (int k = -1; k <= 1; ++k) {
      for (const auto& s : base) {
        line.t.push_back(s.t + kTwoPi * k);
        line.p.push_back(s.p);
      }
    }
    line.t.push_back(origin + 2.0 * kTwoPi);
    line.p.push_back(base.front().p);
    domain = Interval{0.0, kTwoPi};
  } else {
    for (const auto& s : raw.samples) {
      line.t.push_back(s.t);
      line.p.push_back(s.p);
    }
  }
  line.finalize();
  auto m = std::make_shared<const Mollified>(std::move(line), bandwidth, raw.periodic, origin);
  return ParamCurve([m](double t) { return m->value(t); }, [m](double t) { return m->deriv(t); },
                    [m](double t) { return m->second(t); }, domain, raw.periodic, "mollified");
}

std::vector<double> uniform_grid(Interval domain, int count) {
  if (count < 2) throw std::invalid_argument("uniform_grid: at least 2 points required");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double step = domain.length() / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = domain.begin + step * i;
  grid.back() = domain.end;
  return grid;
}

double c0_norm(const ParamCurve& curve, int grid_size) {
  double best = 0.0;
  for (double t : uniform_grid(curve.domain(), grid_size)) {
    best = std::max(best, curve.eval(t).norm());
  }
  return best;
}

double c1_norm(const ParamCurve& curve, int grid_size) {
  double pos = 0.0;
  double vel = 0.0;
  for (double t : uniform_grid(curve.domain(), grid_size)) {
    pos = std::max(pos, curve.eval(t).norm());
    vel = std::max(vel, curve.deriv(t).norm());
  }
  return pos + vel;
}

}  // namespace legendrian
