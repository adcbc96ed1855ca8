#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace legendrian {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double u = 0.0;
  double v = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.u + b.u, a.v + b.v}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.u - b.u, a.v - b.v}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.u, s * a.v}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
  double norm() const { return std::sqrt(u * u + v * v); }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Parameter interval [begin, end].
struct Interval {
  double begin = 0.0;
  double end = kTwoPi;

  double length() const { return end - begin; }
  bool contains(double t) const { return t >= begin && t <= end; }
};

/// Raised when a construction cannot meet its contract: a parameter search hits
/// its cap, quadrature does not converge, or a runtime containment check fails.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace legendrian
