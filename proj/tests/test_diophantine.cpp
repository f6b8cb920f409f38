#include <doctest.h>

#include <cmath>
#include <random>

#include "hallmhd/diophantine.hpp"
#include "hallmhd/spectral.hpp"

using namespace hallmhd;

namespace {

Vec3 cubic2(double s) {
  return {s, s * std::cbrt(2.0), s * std::cbrt(4.0)};
}

// Independent exhaustive search in long double over the whole ball.
struct LongMin {
  long double value = 0.0L;
  WaveVector k{};
};

LongMin brute_force(const Vec3& n, double r, int K) {
  LongMin best{std::numeric_limits<long double>::infinity(), {}};
  const long double nn[3] = {n[0], n[1], n[2]};
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b)
      for (int c = -K; c <= K; ++c) {
        const long k2 = 1L * a * a + 1L * b * b + 1L * c * c;
        if (k2 == 0 || k2 > 1L * K * K) continue;
        const long double dot = nn[0] * a + nn[1] * b + nn[2] * c;
        const long double v = std::fabs(dot) * std::pow(static_cast<long double>(k2), r / 2.0L);
        if (v < best.value) best = {v, {a, b, c}};
      }
  return best;
}

}  // namespace

TEST_CASE("degenerate directions") {
  for (int K : {1, 4, 16}) {
    const auto m = min_product({1.0, 0.0, 0.0}, 2.5, K);
    CHECK(m.c_est == 0.0);
    CHECK(m.argmin.k1 == 0);
    CHECK(m.argmin.k2 == 1);
    CHECK(m.argmin.k3 == 0);
  }
  for (int K : {2, 5, 16}) {
    const auto m = min_product({1.0, 1.0, 1.0}, 2.5, K);
    CHECK(m.c_est == 0.0);
    CHECK(m.argmin.k1 == 1);
    CHECK(m.argmin.k2 == -1);
    CHECK(m.argmin.k3 == 0);
  }
  CHECK(min_product({1.0, 0.0, 0.0}, 4.0, 3).argmin.k2 == 1);
}

TEST_CASE("cubic direction against a long double search") {
  const Vec3 n = cubic2(1.0);
  const auto m = min_product(n, 2.5, 64);
  CHECK(m.c_est > 0.0);
  const LongMin ref = brute_force(n, 2.5, 64);
  CHECK(m.c_est == doctest::Approx(static_cast<double>(ref.value)).epsilon(1e-12));
  // Same minimizer up to sign.
  const bool same = (m.argmin.k1 == ref.k.k1 && m.argmin.k2 == ref.k.k2 && m.argmin.k3 == ref.k.k3) ||
                    (m.argmin.k1 == -ref.k.k1 && m.argmin.k2 == -ref.k.k2 && m.argmin.k3 == -ref.k.k3);
  CHECK(same);
  // Value re-evaluated at the reported argmin.
  const long double dot = static_cast<long double>(n[0]) * m.argmin.k1 +
                          static_cast<long double>(n[1]) * m.argmin.k2 +
                          static_cast<long double>(n[2]) * m.argmin.k3;
  const long double at = std::fabs(dot) * std::pow(static_cast<long double>(m.argmin.norm_squared()), 1.25L);
  CHECK(m.c_est == doctest::Approx(static_cast<double>(at)).epsilon(1e-13));
  // Frozen value from the long double search.
  CHECK(m.c_est == doctest::Approx(0.61819992374792093).epsilon(1e-14));
}

TEST_CASE("compensated dot product") {
  // n.k cancels to about 1e-12 of its terms; the compensated sum keeps it.
  const Vec3 n = cubic2(1.0);
  const WaveVector k{-1000000, 1000000, -519842};
  const long double exact = static_cast<long double>(n[0]) * k.k1 +
                            static_cast<long double>(n[1]) * k.k2 +
                            static_cast<long double>(n[2]) * k.k3;
  const double got = compensated_dot(n, k);
  CHECK(std::abs(got - static_cast<double>(exact)) <= 1e-15 * std::fabs(static_cast<double>(exact)) + 1e-300);
}

TEST_CASE("search properties") {
  const Vec3 n = cubic2(0.8);
  double prev = std::numeric_limits<double>::infinity();
  for (int K = 1; K <= 24; ++K) {
    const double c = min_product(n, 2.5, K).c_est;
    CHECK(c <= prev);
    prev = c;
  }
  // Symmetry: -n has the same minimum.
  const auto a = min_product(n, 2.5, 20);
  const auto b = min_product({-n[0], -n[1], -n[2]}, 2.5, 20);
  CHECK(a.c_est == b.c_est);
  // The representative has its first nonzero component positive.
  const WaveVector k = a.argmin;
  CHECK((k.k1 > 0 || (k.k1 == 0 && (k.k2 > 0 || (k.k2 == 0 && k.k3 > 0)))));

  for (double s : {2.0, 0.5, 4.0, 0.125}) {
    const Vec3 sn{s * n[0], s * n[1], s * n[2]};
    const double cs = min_product(sn, 2.5, 32).c_est;
    CHECK(std::abs(cs - s * min_product(n, 2.5, 32).c_est) <= 1e-14 * cs);
  }
  CHECK_THROWS_AS(make_diophantine(n, 2.5, 0), ConfigError);
  CHECK_THROWS_AS(make_diophantine(n, 0.0, 4), ConfigError);
}

TEST_CASE("check_condition") {
  const auto dv = make_diophantine(cubic2(1.0), 2.5, 16);
  REQUIRE(dv.c_est > 0.0);
  CHECK(check_condition(dv, 0.0).holds);
  CHECK(check_condition(dv, dv.c_est).holds);
  const auto fail = check_condition(dv, 2.0 * dv.c_est);
  CHECK_FALSE(fail.holds);
  CHECK(fail.tightest_k.k1 == dv.argmin.k1);
  CHECK(fail.tightest_k.k2 == dv.argmin.k2);
  CHECK(fail.tightest_k.k3 == dv.argmin.k3);
  CHECK(fail.tightest_shell == static_cast<int>(std::ceil(std::sqrt(dv.argmin.norm_squared()))));
  CHECK(fail.shells.size() == 16);
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& s : fail.shells) smallest = std::min(smallest, s.min_value);
  CHECK(smallest == dv.c_est);
}

TEST_CASE("Poincare inequality") {
  const Lattice lat(16);
  const int K = covering_radius(lat);
  CHECK(K == static_cast<int>(std::ceil(lat.max_wavenumber())));
  const auto dv = make_diophantine(cubic2(1.0), 2.5, K);
  REQUIRE(dv.usable());

  const auto zero = verify_poincare(ScalarField(lat), lat, dv, 0.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.ratio == 0.0);

  // All mass on the minimizing mode.
  ScalarField f(lat);
  set_mode(f, lat, dv.argmin, Complex(1.0, 0.0));
  const auto single = verify_poincare(f, lat, dv, 0.0);
  const double k2 = dv.argmin.norm_squared();
  const double expect = std::pow(k2, 1.25) / std::pow(1.0 + k2, 1.25);
  CHECK(single.ratio == doctest::Approx(expect).epsilon(1e-12));
  CHECK(single.ratio <= 1.0);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_scalar(lat, rng, 100.0, 0.0);
    for (double s : {0.0, 3.0}) CHECK(verify_poincare(g, lat, dv, s).ratio <= 1.0);
  }

  SUBCASE("preconditions") {
    auto g = random_scalar(lat, rng, 100.0, 0.0);
    g[0] = 1.0;
    CHECK_THROWS_AS(verify_poincare(g, lat, dv, 0.0), PoincareError);
    const auto degenerate = make_diophantine({1.0, 0.0, 0.0}, 2.5, K);
    CHECK_THROWS_AS(verify_poincare(f, lat, degenerate, 0.0), PoincareError);
    const auto small_K = make_diophantine(cubic2(1.0), 2.5, 3);
    CHECK_THROWS_AS(verify_poincare(f, lat, small_K, 0.0), PoincareError);
  }
}

TEST_CASE("suggest_background") {
  const auto s = suggest_background(2.5, 32, 1.0);
  CHECK(s.accepted);
  CHECK(s.dv.c_est > 0.0);
  CHECK(s.dv.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(s.candidate.empty());

  const auto zero = suggest_background(2.5, 32, 0.0);
  CHECK_FALSE(zero.accepted);
  CHECK(zero.dv.c_est == 0.0);
  CHECK(zero.dv.norm() == 0.0);

  const auto twice = suggest_background(2.5, 32, 2.0);
  CHECK(twice.candidate == s.candidate);
  CHECK(twice.dv.c_est == doctest::Approx(2.0 * s.dv.c_est).epsilon(1e-13));
}
