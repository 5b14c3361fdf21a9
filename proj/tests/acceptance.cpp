// Acceptance run: one PASS/FAIL line per criterion. With arguments
// (c1 ... c9) only those criteria run. Exit status is 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lgscatter/fit.hpp"
#include "lgscatter/melement.hpp"
#include "lgscatter/validate.hpp"
#include "oracles.hpp"

using namespace lgs;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr double kLambda = 50.0;

Outcome selection_rule() {
  const auto t0 = std::chrono::steady_clock::now();
  const BeamMode beam = BeamMode::from_waist(0, 1, kLambda, 100.0);
  bool pass = true;
  int allowed = 0;
  for (int mi = -1; mi <= 1; ++mi)
    for (int mf = -1; mf <= 1; ++mf) {
      const double v = std::abs(twisted_M_forward_flip(beam, {2, 1, mi}, {2, 1, mf}).value);
      if (mf - mi == 2) {
        pass = pass && v > 0.0;
        ++allowed;
      } else {
        pass = pass && v == 0.0;
      }
    }
  const double t = seconds_since(t0);
  return {pass && allowed == 1 && t < 10.0,
          fmt("9 pairs, 8 exact zeros and 1 nonzero, %.3f s (limit 10 s)", t)};
}

Outcome closed_form_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  const HydrogenState a(2, 1, -1), b(2, 1, 1);
  std::vector<double> d, dlo;
  for (double w : {1e2, 1e3, 1e4}) {
    const BeamMode beam = BeamMode::from_waist(0, 1, kLambda, w);
    const cplx m = twisted_M_forward_flip(beam, a, b).value;
    const cplx cf = closed_form_flip_M(beam, 2).value;
    const cplx lo = leading_order_M(beam, a, b).value;
    d.push_back(std::abs(m - cf) / std::abs(cf));
    dlo.push_back(std::abs(m - lo) / std::abs(lo));
  }
  const double order = std::min(std::log10(d[0] / d[1]), std::log10(d[1] / d[2]));
  const double order_lo = std::min(std::log10(dlo[0] / dlo[1]), std::log10(dlo[1] / dlo[2]));
  const double t = seconds_since(t0);
  const bool pass = d[0] <= 1e-3 && order >= 2.0 && t < 60.0;
  std::string detail = fmt("rel diff %.6e at w0 = 1e2 (limit 1e-3), observed order %.6e (need 2), ",
                           d[0], order);
  detail += fmt("%.3f s; against the channel leading order: %.6e at 1e2, order %.6e", t, dlo[0],
                order_lo);
  return {pass, detail};
}

Outcome closed_form_value() {
  // moment oracles by test-side Simpson
  const double r2 = oracle::simpson(
      [](double r) { return std::pow(oracle::R21(r), 2) * std::pow(r, 4); }, 0.0, 120.0, 200000);
  const double ang = 2 * oracle::pi * oracle::simpson(
      [](double th) {
        const double s = std::sin(th), y = std::abs(oracle::Y(1, 0, th, 0.0));
        return y * y * s * s * s;
      },
      0.0, oracle::pi, 200000);
  const double oracle_value = 4 / oracle::pi * r2 * ang;
  const double w0 = 100.0;
  const BeamMode beam = BeamMode::from_waist(0, 1, kLambda, w0);
  const double v = closed_form_flip_M(beam, 2).value.real() * std::pow(w0, 4);
  const double rel = std::abs(v - 48 / oracle::pi) / (48 / oracle::pi);
  const double rel_oracle = std::abs(oracle_value - 48 / oracle::pi) / (48 / oracle::pi);
  return {rel < 1e-10 && rel_oracle < 1e-10,
          fmt("w0^4 M = %.15f, <r^2> = %.12f, angular = %.12f, rel %.3e", v, r2, ang, rel)};
}

Outcome scaling_law() {
  const std::vector<double> waists{1e3, 1e4, 1e5};
  auto slope = [&](int ell, const HydrogenState& a, const HydrogenState& b) {
    std::vector<std::pair<double, double>> pts;
    for (double w : waists) {
      const BeamMode beam = BeamMode::from_waist(0, ell, kLambda, w);
      pts.emplace_back(w, std::abs(twisted_M_forward_flip(beam, a, b).value));
    }
    return fit_power_law(pts).slope;
  };
  const double s1 = slope(1, {2, 1, -1}, {2, 1, 1});
  const double s2 = slope(2, {3, 2, -2}, {3, 2, 2});
  return {std::abs(s1 + 4) <= 1e-3 && std::abs(s2 + 6) <= 1e-3,
          fmt("slope %.8f (ell=1, want -4), %.8f (ell=2, want -6), w0 = 1e3..1e5", s1, s2)};
}

Outcome gaussian_limit() {
  const HydrogenState g(1, 0, 0);
  const double w0 = 1e4;
  const BeamMode beam = BeamMode::from_waist(0, 0, kLambda, w0);
  const double v = twisted_M_forward_flip(beam, g, g).value.real() * oracle::pi * w0 * w0 / 2;
  return {std::abs(v - 1) <= 1e-6, fmt("M pi w0^2 / 2 = %.12f (tolerance 1e-6)", v)};
}

Outcome gouy_falsifier() {
  const BeamMode in = BeamMode::from_waist(0, 1, kLambda, 100.0);
  const BeamMode out = in.with_indices(1, -1);
  const HydrogenState a(3, 1, -1), b(3, 2, 1);
  auto eval = [&](GouyConvention g) {
    const ScatteringChannel ch{in, out, a, b, 0.0, true, 1.0, QConvention::exact, g};
    return std::abs(twisted_M_general(ch).value);
  };
  const double good = eval(GouyConvention::abs_winding);
  const double bad = eval(GouyConvention::signed_winding);
  return {good > 0.0 && bad < 1e-10 * good,
          fmt("p 0 -> 1, |M| = %.6e, mutated |M| = %.6e, ratio %.3e", good, bad, bad / good)};
}

Outcome foundation() {
  double ortho = 0.0;
  for (int n1 = 1; n1 <= 4; ++n1)
    for (int l1 = 0; l1 < n1; ++l1)
      for (int m = -l1; m <= l1; ++m)
        for (int n2 = 1; n2 <= 4; ++n2)
          for (int l2 = std::abs(m); l2 < n2; ++l2) {
            const double rad = oracle::simpson(
                [&](double r) { return hydrogen_radial(n1, l1, r) * hydrogen_radial(n2, l2, r) * r * r; },
                0.0, 200.0, 200000);
            const double angl = 2 * oracle::pi * oracle::simpson(
                [&](double x) { return normalized_legendre(l1, m, x) * normalized_legendre(l2, m, x); },
                -1.0, 1.0, 40000);
            const bool same = n1 == n2 && l1 == l2;
            ortho = std::max(ortho, std::abs(rad * angl - (same ? 1.0 : 0.0)));
          }

  double lg_norm = 0.0;
  for (int p = 0; p <= 3; ++p)
    for (int ell = -3; ell <= 3; ++ell) {
      const BeamMode m = BeamMode::from_waist(p, ell, 1.0, 2.0);
      for (double z : {0.0, 0.5 * m.rayleigh_range(), m.rayleigh_range()}) {
        const double w = beam_width(m, z);
        const double v = 2 * oracle::pi * oracle::simpson(
            [&](double rho) { return std::norm(lg_mode_cylindrical(m, rho, z, 0.0)) * rho; }, 0.0,
            14 * w, 20000);
        lg_norm = std::max(lg_norm, std::abs(v - 1));
      }
    }

  const double dip = std::abs(dipole_series_term(1.0, 1, {1, 0, 0}, {2, 1, 0}));
  const double dip_dev = std::abs(dip - 128 * std::sqrt(2.0) / 243);
  const double g = gos(1e-4, {1, 0, 0}, {2, 1, 0});
  const double gos_dev = std::abs(g - 0.208095);
  const bool pass = ortho <= 1e-10 && lg_norm <= 1e-10 && dip_dev <= 1e-8 && gos_dev <= 1e-5;
  return {pass, fmt("orthonormality %.3e, LG norm %.3e, dipole dev %.3e, GOS dev %.3e", ortho,
                    lg_norm, dip_dev, gos_dev)};
}

Outcome angular_restriction() {
  const BeamMode beam = BeamMode::from_waist(0, 2, kLambda, 100.0);
  bool all_zero = true;
  for (int mi = -1; mi <= 1; ++mi)
    for (int mf = -1; mf <= 1; ++mf)
      all_zero = all_zero && twisted_M_forward_flip(beam, {3, 1, mi}, {3, 1, mf}).value == cplx(0, 0);
  return {all_zero, "ell = 2, N = 3, L_i = L_f = 1: every M pair returns exactly 0"};
}

Outcome determinism() {
  const ValidationProfile profile = ValidationProfile::named("default");
  const std::string a = validate_suite(profile).text();
  const std::string b = validate_suite(profile).text();
  return {a == b, fmt("two validate reports of %.0f bytes %s", double(a.size())) +
                      (a == b ? "byte-identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::pair<const char*, std::function<Outcome()>>>> all{
      {"c1", {"selection_rule", selection_rule}},
      {"c2", {"closed_form_agreement", closed_form_agreement}},
      {"c3", {"closed_form_value", closed_form_value}},
      {"c4", {"scaling_law", scaling_law}},
      {"c5", {"gaussian_limit", gaussian_limit}},
      {"c6", {"gouy_falsifier", gouy_falsifier}},
      {"c7", {"foundation_suite", foundation}},
      {"c8", {"angular_restriction", angular_restriction}},
      {"c9", {"determinism", determinism}},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& [id, entry] : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    Outcome o{false, ""};
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s %s: %s\n", o.pass ? "PASS" : "FAIL", id.c_str(), entry.first, o.detail.c_str());
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
