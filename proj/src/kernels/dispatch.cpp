#include <cassert>
#include <cstdlib>
#include <string>

#include "legendrian/kernels.hpp"

namespace legendrian::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(LEGENDRIAN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(LEGENDRIAN_HAVE_NEON)
      return true;  // Advanced SIMD is mandatory on aarch64.
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (available(isa)) out.push_back(isa);
  }
  return out;
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("LEGENDRIAN_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == to_string(isa) && available(isa)) return isa;
    }
  }
  if (available(Isa::avx2)) return Isa::avx2;
  if (available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const Table& active_table() {
  static const Table& t = table(active());
  return t;
}

}  // namespace

Isa active() {
  static const Isa isa = detect();
  return isa;
}

const Table& table(Isa isa) {
  switch (isa) {
#if defined(LEGENDRIAN_HAVE_AVX2)
    case Isa::avx2:
      if (available(Isa::avx2)) return detail::avx2_table();
      break;
#endif
#if defined(LEGENDRIAN_HAVE_NEON)
    case Isa::neon:
      return detail::neon_table();
#endif
    default:
      break;
  }
  return detail::scalar_table();
}

void loop_components(std::span<const double> cos_phase, std::span<const double> xdot,
                     std::span<const double> y, std::span<const double> coef, double r,
                     std::span<double> g1, std::span<double> g2) {
  const std::size_t n = cos_phase.size();
  assert(xdot.size() == n && y.size() == n && coef.size() == n && g1.size() >= n &&
         g2.size() >= n);
  active_table().loop_components(n, cos_phase.data(), xdot.data(), y.data(), coef.data(), r,
                                 g1.data(), g2.data());
}

double ample_min_margin(std::span<const double> u, std::span<const double> v, double y,
                        double eps) {
  assert(u.size() == v.size());
  return active_table().ample_min_margin(u.size(), u.data(), v.data(), y, eps);
}

LoopJetMax loop_jet_max(std::span<const double> cos_s, std::span<const double> sin_s,
                        const LoopPoint& p) {
  assert(cos_s.size() == sin_s.size());
  return active_table().loop_jet_max(cos_s.size(), cos_s.data(), sin_s.data(), p);
}

double max_hypot2(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_table().max_hypot2(a.size(), a.data(), b.data());
}

double max_hypot3(std::span<const double> a, std::span<const double> b,
                  std::span<const double> c) {
  assert(a.size() == b.size() && a.size() == c.size());
  return active_table().max_hypot3(a.size(), a.data(), b.data(), c.data());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_table().max_abs_diff(a.size(), a.data(), b.data());
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_table().dot(a.size(), a.data(), b.data());
}

}  // namespace legendrian::kernels
