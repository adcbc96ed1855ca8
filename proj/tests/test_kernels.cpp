#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "legendrian/kernels.hpp"

using namespace legendrian::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-14 * scale; }

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 255, 1000, 4099};

}  // namespace

TEST_CASE("scalar path is always available and listed first") {
  CHECK(available(Isa::scalar));
  const auto isas = available_isas();
  REQUIRE(!isas.empty());
  CHECK(isas.front() == Isa::scalar);
  CHECK(available(active()));
  CHECK(to_string(Isa::avx2) == "avx2");
  MESSAGE("active kernels: " << to_string(active()));
}

TEST_CASE("every variant agrees with the scalar reference") {
  const Table& ref = table(Isa::scalar);
  std::mt19937_64 rng(2024);
  for (Isa isa : available_isas()) {
    const Table& k = table(isa);
    CAPTURE(to_string(isa));
    for (std::size_t n : kLengths) {
      CAPTURE(n);
      const auto c = random_vector(rng, n, -1, 1);
      const auto s = random_vector(rng, n, -1, 1);
      const auto xd = random_vector(rng, n, -3, 3);
      const auto y = random_vector(rng, n, -2, 2);
      const auto coef = random_vector(rng, n, -0.1, 0.1);
      const double r = 17.5;

      std::vector<double> g1a(n), g2a(n), g1b(n), g2b(n);
      ref.loop_components(n, c.data(), xd.data(), y.data(), coef.data(), r, g1a.data(), g2a.data());
      k.loop_components(n, c.data(), xd.data(), y.data(), coef.data(), r, g1b.data(), g2b.data());
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(close(g1a[i], g1b[i], r + 3));
        CHECK(close(g2a[i], g2b[i], 100 * (r + 3)));
      }

      const double ma = ref.ample_min_margin(n, g1a.data(), g2a.data(), 0.3, 0.2);
      const double mb = k.ample_min_margin(n, g1a.data(), g2a.data(), 0.3, 0.2);
      if (n == 0) {
        CHECK(std::isinf(ma));
        CHECK(std::isinf(mb));
      } else {
        CHECK(close(ma, mb, 1000));
      }

      LoopPoint p{r, 1.3, -0.4, 0.8, 2.1, 0.01, -0.003};
      const LoopJetMax ja = ref.loop_jet_max(n, c.data(), s.data(), p);
      const LoopJetMax jb = k.loop_jet_max(n, c.data(), s.data(), p);
      CHECK(close(ja.pos, jb.pos, 1000));
      CHECK(close(ja.dt, jb.dt, 1000));
      CHECK(close(ja.ds, jb.ds, 1000));
      CHECK(close(ja.pos2, jb.pos2, 1000));
      CHECK(close(ja.dt2, jb.dt2, 1000));
      CHECK(close(ja.ds2, jb.ds2, 1000));

      CHECK(close(ref.max_hypot2(n, c.data(), s.data()), k.max_hypot2(n, c.data(), s.data()), 2));
      CHECK(close(ref.max_hypot3(n, c.data(), s.data(), xd.data()),
                  k.max_hypot3(n, c.data(), s.data(), xd.data()), 4));
      CHECK(ref.max_abs_diff(n, c.data(), s.data()) == k.max_abs_diff(n, c.data(), s.data()));
      double mass = 0.0;
      for (std::size_t i = 0; i < n; ++i) mass += std::abs(c[i] * xd[i]);
      CHECK(std::abs(ref.dot(n, c.data(), xd.data()) - k.dot(n, c.data(), xd.data())) <=
            1e-14 * (mass + 1));
    }
  }
}

TEST_CASE("scalar kernels match hand-evaluated values") {
  const Table& k = table(Isa::scalar);
  const double c[] = {1.0, 0.0, -1.0};
  const double xd[] = {1.0, 1.0, 1.0};
  const double y[] = {1.0, 1.0, 1.0};
  const double coef[] = {8.0 / 902.0, 8.0 / 902.0, 8.0 / 902.0};
  double g1[3], g2[3];
  k.loop_components(3, c, xd, y, coef, 30.0, g1, g2);
  CHECK(g1[0] == 31.0);
  CHECK(g2[0] == doctest::Approx(17825.0 / 451.0).epsilon(1e-15));
  CHECK(g1[2] == -29.0);
  const double u[] = {2.0};
  const double v[] = {0.15};
  CHECK(k.ample_min_margin(1, u, v, 0.0, 0.1) == doctest::Approx(0.05).epsilon(1e-14));
  const double a[] = {3.0, -1.0};
  const double b[] = {4.0, 0.5};
  CHECK(k.max_hypot2(2, a, b) == 5.0);
  CHECK(k.dot(2, a, b) == 11.5);
  CHECK(k.max_abs_diff(2, a, b) == 1.5);
}

TEST_CASE("dispatch wrappers use the active table") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{5, 4, 3, 2, 1};
  CHECK(dot(a, b) == 35.0);
  CHECK(max_abs_diff(a, b) == 4.0);
  CHECK(max_hypot3(a, b, a) == doctest::Approx(std::sqrt(51.0)));
}
