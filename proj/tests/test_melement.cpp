#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lgscatter/errors.hpp"
#include "lgscatter/melement.hpp"
#include "oracles.hpp"

using namespace lgs;

namespace {

ScatteringChannel channel(const BeamMode& in, const BeamMode& out, const HydrogenState& a,
                          const HydrogenState& b, double theta = 0.0,
                          GouyConvention g = GouyConvention::abs_winding) {
  return {in, out, a, b, theta, true, 1.0, QConvention::exact, g};
}

// 2p(-1) -> 2p(+1) flip with l = 1 at waist w0, by direct 2-D Simpson.
double brute_flip_2p(double w0, double lambda) {
  const double k = 2 * oracle::pi / lambda;
  return oracle::simpson2(
      [&](double r, double th) {
        const double s = std::sin(th);
        const double u2 = std::norm(oracle::lg(0, 1, w0, k, r * s, r * std::cos(th), 0.0));
        return 2 * oracle::pi * oracle::R21(r) * oracle::R21(r) * (-3 / (8 * oracle::pi)) * s *
               s * u2 * r * r * s;
      },
      0.0, 80.0, 4000, 0.0, oracle::pi, 400);
}

}  // namespace

TEST_CASE("plane-wave elastic 1s form factor") {
  const HydrogenState g(1, 0, 0);
  for (double q : {0.0, 0.3, 1.0, 4.0}) {
    const double expect = 16 / std::pow(4 + q * q, 2);
    CHECK(plane_wave_M({0, 0, q}, g, g).value.real() == doctest::Approx(expect).epsilon(1e-10));
    // off-axis q goes through the 3-D path
    const double c = q / std::sqrt(2.0);
    CHECK(std::abs(plane_wave_M({c, 0, c}, g, g).value - expect) < 1e-10);
  }
}

TEST_CASE("dipole term and oscillator strength") {
  const HydrogenState s1(1, 0, 0), p0(2, 1, 0), s2(2, 0, 0);
  CHECK(std::abs(dipole_series_term(1.0, 1, s1, p0)) ==
        doctest::Approx(128 * std::sqrt(2.0) / 243).epsilon(1e-10));
  CHECK(std::abs(dipole_series_term(1.0, 1, s1, s2)) < 1e-14);
  CHECK(gos(1e-4, s1, p0) == doctest::Approx(0.208095).epsilon(2e-5));
  CHECK(gos(1e-4, s1, p0) == doctest::Approx(12288.0 / 59049).epsilon(1e-6));
  CHECK(gos(0.8, s1, s1) == 0.0);
  CHECK(gos(1e-3, s1, s2) < 1e-5);
  CHECK_THROWS_AS(gos(0.0, s1, p0), DomainError);
}

TEST_CASE("forward flip against an independent 2-D oracle") {
  const HydrogenState a(2, 1, -1), b(2, 1, 1);
  const BeamMode beam = BeamMode::from_waist(0, 1, 50.0, 100.0);
  const AmplitudeResult r = twisted_M_forward_flip(beam, a, b);
  CHECK(r.converged);
  CHECK(r.method == Method::forward_quadrature);
  CHECK(std::abs(r.value.imag()) < 1e-20);
  CHECK(r.value.real() == doctest::Approx(brute_flip_2p(100.0, 50.0)).epsilon(1e-8));
  CHECK(r.value.real() < 0.0);
}

TEST_CASE("leading order and closed form") {
  const HydrogenState a(2, 1, -1), b(2, 1, 1);
  const double w0 = 100.0;
  const BeamMode beam = BeamMode::from_waist(0, 1, 50.0, w0);
  const double w4 = std::pow(w0, 4);
  // frozen: the channel's own angular factor is -4/5, so -96/pi
  CHECK(leading_order_M(beam, a, b).value.real() * w4 == doctest::Approx(-96 / oracle::pi).epsilon(1e-12));
  // frozen: M = 0 moments, 4/pi * 30 * 2/5
  CHECK(closed_form_flip_M(beam, 2).value.real() * w4 == doctest::Approx(48 / oracle::pi).epsilon(1e-12));
  const BeamMode wide = BeamMode::from_waist(0, 1, 50.0, 2 * w0);
  CHECK(closed_form_flip_M(wide, 2).value.real() / closed_form_flip_M(beam, 2).value.real() ==
        doctest::Approx(1.0 / 16).epsilon(1e-14));
  CHECK(closed_form_flip_M(BeamMode::from_waist(0, 0, 50.0, 1e4), 1).value.real() * 1e8 ==
        doctest::Approx(2 / oracle::pi).epsilon(1e-13));
  CHECK_THROWS_AS(closed_form_flip_M(beam, a, HydrogenState(2, 0, 0)), DomainError);
  CHECK(flip_prefactor(1, 1) == doctest::Approx(8 / oracle::pi).epsilon(1e-15));
  CHECK(flip_prefactor(0, 0) == doctest::Approx(2 / oracle::pi).epsilon(1e-15));

  // the quadrature approaches the leading order at second order in a/w0
  double prev = 1.0;
  for (double w : {1e2, 1e3, 1e4}) {
    const BeamMode m = BeamMode::from_waist(0, 1, 50.0, w);
    const double d = std::abs(twisted_M_forward_flip(m, a, b).value.real() /
                              leading_order_M(m, a, b).value.real() - 1);
    if (w > 1e2) CHECK(d < prev / 90);
    prev = d;
  }
}

TEST_CASE("selection rule and angular restriction") {
  const BeamMode beam = BeamMode::from_waist(0, 1, 50.0, 100.0);
  for (int mi = -1; mi <= 1; ++mi)
    for (int mf = -1; mf <= 1; ++mf) {
      const auto r = twisted_M_forward_flip(beam, {2, 1, mi}, {2, 1, mf});
      if (mf - mi == 2) {
        CHECK(std::abs(r.value) > 0.0);
      } else {
        CHECK(r.value == cplx(0.0, 0.0));
      }
      CHECK(azimuthal_selection(1, -1, mi, mf) == 2 + mi - mf);
    }
  const BeamMode two = BeamMode::from_waist(0, 2, 50.0, 100.0);
  CHECK(twisted_M_forward_flip(two, {3, 1, -1}, {3, 1, 1}).value == cplx(0.0, 0.0));
  CHECK_THROWS_AS(twisted_M_forward_flip(two, {2, 1, -1}, {2, 1, 1}), DomainError);
  CHECK_THROWS_AS(twisted_M_forward_flip(beam, {2, 1, -1}, {3, 1, 1}), DomainError);
}

TEST_CASE("general element at zero angle equals the forward flip") {
  const BeamMode beam = BeamMode::from_waist(0, 1, 50.0, 300.0);
  const HydrogenState a(3, 2, -1), b(3, 2, 1);
  const auto g = twisted_M_general(channel(beam, beam.with_indices(0, -1), a, b));
  const auto f = twisted_M_forward_flip(beam, a, b);
  CHECK(g.method == Method::general_quadrature);
  CHECK(std::abs(g.value - f.value) < 1e-10 * std::abs(f.value));
}

TEST_CASE("Gouy falsifier configuration") {
  const BeamMode in = BeamMode::from_waist(0, 1, 50.0, 100.0);
  const HydrogenState a(3, 1, -1), b(3, 2, 1);
  const double good = std::abs(twisted_M_general(channel(in, in.with_indices(1, -1), a, b)).value);
  const double bad = std::abs(twisted_M_general(
      channel(in, in.with_indices(1, -1), a, b, 0.0, GouyConvention::signed_winding)).value);
  CHECK(good > 1e-9);
  CHECK(bad < 1e-10 * good);
}

TEST_CASE("mirror symmetry") {
  const BeamMode in = BeamMode::from_waist(1, 2, 50.0, 80.0);
  const BeamMode mi = in.with_indices(1, -2);
  const double x = std::abs(twisted_M_forward_flip(in, {4, 3, -1}, {4, 3, 3}).value);
  const double y = std::abs(twisted_M_forward_flip(mi, {4, 3, 1}, {4, 3, -3}).value);
  CHECK(x > 0.0);
  CHECK(x == doctest::Approx(y).epsilon(1e-12));
}

TEST_CASE("plane-wave limit off axis") {
  const HydrogenState g(1, 0, 0);
  const double w0 = 1e4, theta = 0.4;
  const BeamMode in = BeamMode::from_waist(0, 0, 2 * oracle::pi, w0);
  const auto ch = channel(in, in, g, g, theta);
  const Vec3 q = ch.momentum_transfer();
  const double qq = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
  CHECK(qq == doctest::Approx(2 * std::sin(theta / 2)).epsilon(1e-14));
  const cplx tw = twisted_M_general(ch).value * (oracle::pi * w0 * w0 / 2);
  CHECK(std::abs(tw - 16 / std::pow(4 + qq * qq, 2)) < 1e-6);
  CHECK(compton_M(ch).value.real() == doctest::Approx(16 / std::pow(4 + qq * qq, 2)).epsilon(1e-10));
}

TEST_CASE("channel validation") {
  const BeamMode in = BeamMode::from_waist(0, 1, 50.0, 100.0);
  auto ch = channel(in, in.with_indices(0, -1), {2, 1, -1}, {2, 1, 1});
  ch.polarization_overlap = 1.5;
  CHECK_THROWS_AS(ch.validate(), DomainError);
  ch = channel(in, in.with_indices(0, -1), {2, 1, -1}, {3, 1, 1});
  CHECK_THROWS_AS(ch.validate(), DomainError);  // elastic with different energies
  ch = channel(in, in.with_indices(0, -1), {2, 1, -1}, {2, 1, 1}, 4.0);
  CHECK_THROWS_AS(ch.validate(), DomainError);
}

TEST_CASE("underflow guard rescales very wide beams") {
  CHECK(underflow_guard(3, 4, 1e45));
  CHECK_FALSE(underflow_guard(3, 4, 1e30));
  const BeamMode beam = BeamMode::from_waist(0, 3, 50.0, 1e45);
  const HydrogenState a(4, 3, -3), b(4, 3, 3);
  const auto r = twisted_M_forward_flip(beam, a, b);
  const auto lo = leading_order_M(beam, a, b);
  CHECK(r.rescale_power == 8);
  CHECK(lo.rescale_power == 8);
  CHECK(std::isfinite(r.value.real()));
  CHECK(std::abs(r.value) > 1e-10);
  CHECK(std::abs(r.value - lo.value) < 1e-10 * std::abs(lo.value));
}
