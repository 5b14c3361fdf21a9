#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lgscatter/errors.hpp"
#include "lgscatter/specfun.hpp"
#include "oracles.hpp"

using namespace lgs;

TEST_CASE("hydrogen state validation") {
  CHECK_THROWS_AS(HydrogenState(0, 0, 0), DomainError);
  CHECK_THROWS_AS(HydrogenState(2, 2, 0), DomainError);
  CHECK_THROWS_AS(HydrogenState(3, 1, 2), DomainError);
  CHECK_THROWS_AS(HydrogenState(2, -1, 0), DomainError);
  const HydrogenState s(3, 2, -2);
  CHECK(s.energy() == doctest::Approx(-1.0 / 18));
  CHECK(s.characteristic_radius() == 9.0);
}

TEST_CASE("associated Laguerre against explicit polynomials") {
  for (int a = 0; a <= 4; ++a)
    for (double x : {0.0, 0.3, 1.7, 6.0}) {
      CHECK(assoc_laguerre(0, a, x) == 1.0);
      CHECK(assoc_laguerre(1, a, x) == doctest::Approx(1 + a - x).epsilon(1e-14));
      CHECK(assoc_laguerre(2, a, x) ==
            doctest::Approx((x * x - 2 * (a + 2) * x + (a + 1) * (a + 2)) / 2).epsilon(1e-14));
    }
  CHECK(assoc_laguerre(5, 3, 0.0) == 56.0);
}

TEST_CASE("spherical harmonics match closed forms with Condon-Shortley phase") {
  for (int l = 0; l <= 2; ++l)
    for (int m = -l; m <= l; ++m)
      for (double th : {0.0, 0.4, 1.3, 2.9})
        for (double ph : {0.0, 0.7, 4.0}) {
          const cplx a = spherical_harmonic(l, m, th, ph);
          const cplx b = oracle::Y(l, m, th, ph);
          CHECK(std::abs(a - b) < 1e-14);
        }
  CHECK(spherical_harmonic(1, 1, kPi / 2, 0.0).real() < 0.0);
  CHECK_THROWS_AS(spherical_harmonic(1, 2, 0.1, 0.1), DomainError);
}

TEST_CASE("radial functions match closed forms") {
  for (double r : {0.0, 0.5, 2.0, 7.5, 20.0}) {
    CHECK(hydrogen_radial(1, 0, r) == doctest::Approx(oracle::R10(r)).epsilon(1e-13));
    CHECK(hydrogen_radial(2, 0, r) == doctest::Approx(oracle::R20(r)).epsilon(1e-13));
    CHECK(hydrogen_radial(2, 1, r) == doctest::Approx(oracle::R21(r)).epsilon(1e-13));
    CHECK(hydrogen_radial(3, 0, r) == doctest::Approx(oracle::R30(r)).epsilon(1e-13));
    CHECK(hydrogen_radial(3, 1, r) == doctest::Approx(oracle::R31(r)).epsilon(1e-13));
    CHECK(hydrogen_radial(3, 2, r) == doctest::Approx(oracle::R32(r)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(hydrogen_radial(2, 2, 1.0), DomainError);
}

TEST_CASE("orbital cache agrees with the free function") {
  const HydrogenState s(3, 2, 1);
  const HydrogenOrbital orb(s);
  for (double r : {0.2, 3.0, 11.0}) {
    const cplx a = orb(r, 0.8, 1.1);
    const cplx b = hydrogen_wavefunction(s, r, 0.8, 1.1);
    CHECK(std::abs(a - b) < 1e-15 * std::abs(b) + 1e-300);
    CHECK(std::abs(b - oracle::R32(r) * oracle::Y(2, 1, 0.8, 1.1)) < 1e-14);
  }
}

TEST_CASE("radial moments against brute-force integration") {
  auto brute = [](double (*ra)(double), double (*rb)(double), int k) {
    return oracle::simpson([&](double r) { return ra(r) * rb(r) * std::pow(r, k + 2); }, 0.0,
                           120.0, 40000);
  };
  // <r^2> in 2p is the frozen value 30
  CHECK(brute(oracle::R21, oracle::R21, 2) == doctest::Approx(30.0).epsilon(1e-10));
  CHECK(radial_moment(2, 1, 1, 2) == doctest::Approx(30.0).epsilon(1e-13));
  CHECK(radial_moment(3, 1, 2, 3) ==
        doctest::Approx(brute(oracle::R31, oracle::R32, 3)).epsilon(1e-10));
  CHECK(radial_moment(3, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(radial_moment(3, 0, 1, 0) - brute(oracle::R30, oracle::R31, 0)) < 1e-10);
}

TEST_CASE("angular moments against brute-force integration") {
  auto brute = [](int li, int mi, int lf, int mf, int s, int w) {
    return oracle::simpson2(
        [&](double th, double ph) {
          return std::conj(oracle::Y(lf, mf, th, ph)) * std::pow(std::sin(th), s) *
                 std::polar(1.0, w * ph) * oracle::Y(li, mi, th, ph) * std::sin(th);
        },
        0.0, oracle::pi, 400, 0.0, 2 * oracle::pi, 64);
  };
  // frozen: sin^2 between M = 0 p states gives 2/5
  CHECK(angular_moment(1, 0, 1, 0, 2, 0) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(brute(1, 0, 1, 0, 2, 0).real() == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(angular_moment(1, -1, 1, 1, 2, 2) == doctest::Approx(-0.8).epsilon(1e-14));
  CHECK(brute(1, -1, 1, 1, 2, 2).real() == doctest::Approx(-0.8).epsilon(1e-9));
  CHECK(angular_moment(2, -2, 2, 2, 4, 4) ==
        doctest::Approx(brute(2, -2, 2, 2, 4, 4).real()).epsilon(1e-9));
  // odd total power of sin theta
  CHECK(angular_moment(1, 0, 2, 1, 1, 1) ==
        doctest::Approx(brute(1, 0, 2, 1, 1, 1).real()).epsilon(1e-9));
  CHECK(angular_moment(1, -1, 1, 1, 2, 1) == 0.0);
}

TEST_CASE("dipole matrix element 1s-2p0") {
  const double radial = oracle::simpson(
      [](double r) { return oracle::R21(r) * r * oracle::R10(r) * r * r; }, 0.0, 80.0, 40000);
  const double expect = 128 * std::sqrt(2.0) / 243;
  CHECK(radial / std::sqrt(3.0) == doctest::Approx(expect).epsilon(1e-10));
}
