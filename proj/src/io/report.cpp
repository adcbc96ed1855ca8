#include <algorithm>
#include <cmath>

#include "legendrian/contact.hpp"
#include "legendrian/run.hpp"

namespace legendrian::cli {

Measurements measure(const LegendrianCurve& curve, const ParamCurve& target, int grid) {
  Measurements m;
  for (double t : uniform_grid(curve.domain(), grid)) {
    const Vec3 p = curve.eval(t);
    const Vec3 q = target.eval(t);
    m.ac_error = std::max(m.ac_error, std::hypot(p.x - q.x, p.z - q.z));
    m.b_error = std::max(m.b_error, std::abs(p.y - q.y));
  }
  m.residual_max = legendrian_residual(curve.path(), ContactModel::Standard3, grid).max_abs;
  return m;
}

nlohmann::json describe(const LegendrianCurve& curve) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(curve.kind()));
  j["target"] = curve.meta().target;
  j["domain"] = {curve.domain().begin, curve.domain().end};
  j["eps"] = curve.params().eps;
  j["r"] = curve.params().r;
  j["n"] = curve.params().n;
  j["gamma_c1"] = curve.meta().gamma_c1;
  if (std::isfinite(curve.meta().ac_bound)) j["ac_bound"] = curve.meta().ac_bound;
  if (curve.meta().i2) j["i2"] = *curve.meta().i2;
  if (curve.meta().g_l1) j["g_l1"] = *curve.meta().g_l1;
  return j;
}

}  // namespace legendrian::cli
