#pragma once

// Data-parallel inner loops shared by the quadrature and the grid scans.
//
// Every kernel has a scalar reference implementation; AVX2 (x86-64) and NEON
// (aarch64) variants are compiled when the toolchain supports them and chosen
// at runtime. Setting LEGENDRIAN_ISA=scalar in the environment forces the
// reference path.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace legendrian::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool available(Isa isa);

/// Best available variant, unless overridden by LEGENDRIAN_ISA.
Isa active();

std::vector<Isa> available_isas();

/// Per-t loop data for the jet scan: γ₁ = r cos s + xdot,
/// γ₂ = γ₁ (y + k γ₁), and the t-derivatives of xdot, y, k.
struct LoopPoint {
  double r = 0.0;
  double xdot = 0.0;
  double xddot = 0.0;
  double y = 0.0;
  double ydot = 0.0;
  double k = 0.0;
  double kdot = 0.0;
};

/// Maxima over s of |γ|, |∂ₜγ|, |∂ₛγ| (Euclidean) and of |γ₂|, |∂ₜγ₂|, |∂ₛγ₂|.
struct LoopJetMax {
  double pos = 0.0;
  double dt = 0.0;
  double ds = 0.0;
  double pos2 = 0.0;
  double dt2 = 0.0;
  double ds2 = 0.0;
};

struct Table {
  // g1[i] = r·cos_phase[i] + xdot[i]; g2[i] = g1[i]·(y[i] + coef[i]·g1[i]).
  void (*loop_components)(std::size_t n, const double* cos_phase, const double* xdot,
                          const double* y, const double* coef, double r, double* g1,
                          double* g2);
  // min_i eps·min(|u|, u²) − |v − y·u|; +inf for n = 0.
  double (*ample_min_margin)(std::size_t n, const double* u, const double* v, double y,
                             double eps);
  LoopJetMax (*loop_jet_max)(std::size_t n, const double* cos_s, const double* sin_s,
                             const LoopPoint& p);
  // max_i sqrt(a² + b²)
  double (*max_hypot2)(std::size_t n, const double* a, const double* b);
  // max_i sqrt(a² + b² + c²)
  double (*max_hypot3)(std::size_t n, const double* a, const double* b, const double* c);
  // max_i |a − b|
  double (*max_abs_diff)(std::size_t n, const double* a, const double* b);
  double (*dot)(std::size_t n, const double* a, const double* b);
};

const Table& table(Isa isa);

// Wrappers dispatching to the active table.

void loop_components(std::span<const double> cos_phase, std::span<const double> xdot,
                     std::span<const double> y, std::span<const double> coef, double r,
                     std::span<double> g1, std::span<double> g2);
double ample_min_margin(std::span<const double> u, std::span<const double> v, double y,
                        double eps);
LoopJetMax loop_jet_max(std::span<const double> cos_s, std::span<const double> sin_s,
                        const LoopPoint& p);
double max_hypot2(std::span<const double> a, std::span<const double> b);
double max_hypot3(std::span<const double> a, std::span<const double> b,
                  std::span<const double> c);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

namespace detail {
const Table& scalar_table();
#if defined(LEGENDRIAN_HAVE_AVX2)
const Table& avx2_table();
#endif
#if defined(LEGENDRIAN_HAVE_NEON)
const Table& neon_table();
#endif
}  // namespace detail

}  // namespace legendrian::kernels
