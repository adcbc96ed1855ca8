#include "legendrian/contact.hpp"

#include <algorithm>
#include <stdexcept>

namespace legendrian {

std::string_view to_string(ContactModel model) {
  return model == ContactModel::Standard3 ? "Standard3" : "Car";
}

ResidualReport legendrian_residual(const ParamCurve& curve, ContactModel model, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("legendrian_residual: grid_size must be >= 2");
  ResidualReport report;
  report.grid = uniform_grid(curve.domain(), grid_size);
  report.residuals.reserve(report.grid.size());
  for (double t : report.grid) {
    const Vec3 p = curve.eval(t);
    const Vec3 v = curve.deriv(t);
    double res = 0.0;
    if (model == ContactModel::Standard3) {
      res = v.z - p.y * v.x;
    } else {
      res = std::sin(p.x) * v.y - std::cos(p.x) * v.z;
    }
    report.residuals.push_back(res);
    report.max_abs = std::max(report.max_abs, std::abs(res));
  }
  return report;
}

ParamCurve car_from_standard(const LegendrianCurve& curve) {
  const ParamCurve& path = curve.path();
  auto position = [path](double t) {
    const Vec3 p = path.eval(t);
    return Vec3{std::atan(p.y), p.x, p.z};
  };
  auto velocity = [path](double t) {
    const Vec3 p = path.eval(t);
    const Vec3 v = path.deriv(t);
    return Vec3{v.y / (1.0 + p.y * p.y), v.x, v.z};
  };
  return ParamCurve(position, velocity, {}, path.domain(), path.periodic(),
                    path.name() + "/car");
}

}  // namespace legendrian
