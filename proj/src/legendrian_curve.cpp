#include "legendrian/legendrian_curve.hpp"

#include <stdexcept>

namespace legendrian {

void ApproxParams::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("ApproxParams: eps must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("ApproxParams: r must be positive");
  if (n < 1) throw std::invalid_argument("ApproxParams: n must be at least 1");
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::open:
      return "open";
    case CurveKind::closed:
      return "closed";
    case CurveKind::glued:
      return "glued";
  }
  return "unknown";
}

}  // namespace legendrian
