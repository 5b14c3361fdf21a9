#include "lgscatter/validate.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "lgscatter/config.hpp"
#include "lgscatter/errors.hpp"
#include "lgscatter/fit.hpp"
#include "lgscatter/melement.hpp"
#include "lgscatter/sweep.hpp"

namespace lgs {
namespace {

constexpr double kWavelength = 50.0;

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Suite {
  ValidationProfile profile;
  GouyConvention gouy;
  ValidationReport report;

  void add(const std::string& name, bool pass, const std::string& detail) {
    report.checks.push_back({name, pass, detail});
  }

  // A check that throws is recorded as a failure rather than aborting the suite.
  void run(const std::string& name, const std::function<CheckResult()>& body) {
    try {
      CheckResult r = body();
      r.name = name;
      report.checks.push_back(r);
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what());
    }
  }

  QuadratureSpec spec(const HydrogenState& a, const HydrogenState& b) const {
    QuadratureSpec s = default_quadrature(a, b);
    s.rel_tol = profile.rel_tol;
    return s;
  }

  AmplitudeResult flip(const BeamMode& beam, const HydrogenState& a, const HydrogenState& b) const {
    return twisted_M_forward_flip(beam, a, b, spec(a, b), gouy);
  }

  AmplitudeResult general(const BeamMode& in, const BeamMode& out, const HydrogenState& a,
                          const HydrogenState& b, double theta = 0.0) const {
    ScatteringChannel ch{in, out, a, b, theta, true, 1.0, QConvention::exact, gouy};
    return twisted_M_general(ch, spec(a, b));
  }
};

std::vector<HydrogenState> states_up_to(int n_max) {
  std::vector<HydrogenState> out;
  for (int n = 1; n <= n_max; ++n)
    for (int l = 0; l < n; ++l)
      for (int m = -l; m <= l; ++m) out.emplace_back(n, l, m);
  return out;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// |M| over a waist grid for the ell -> -ell flip in the given states.
std::vector<std::pair<double, double>> waist_series(const Suite& s, int ell,
                                                    const HydrogenState& a,
                                                    const HydrogenState& b,
                                                    const std::vector<double>& waists) {
  std::vector<std::pair<double, double>> pts;
  for (double w : waists) {
    const BeamMode beam = BeamMode::from_waist(0, ell, kWavelength, w);
    pts.emplace_back(w, std::abs(s.flip(beam, a, b).value));
  }
  return pts;
}

CheckResult ok(bool pass, std::string detail) { return {"", pass, std::move(detail)}; }

}  // namespace

ValidationProfile ValidationProfile::named(const std::string& name) {
  if (name == "default") return {"default", 1e-8};
  if (name == "tight") return {"tight", 1e-11};
  throw ConfigError("profile", "unknown validation profile '" + name + "'");
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::text() const {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    passed += c.pass;
  }
  os << passed << "/" << checks.size() << " checks passed\n";
  return os.str();
}

ValidationReport validate_suite(const ValidationProfile& profile, GouyConvention gouy) {
  Suite s{profile, gouy, {}};

  s.run("hydrogen_orthonormality", [&] {
    double worst = 0.0;
    const auto states = states_up_to(4);
    for (const auto& a : states)
      for (const auto& b : states) {
        if (a.m() != b.m()) continue;  // orthogonal through the azimuth
        const double v = std::abs(plane_wave_M({0, 0, 0}, a, b, s.spec(a, b)).value);
        worst = std::max(worst, std::abs(v - (a == b ? 1.0 : 0.0)));
      }
    return ok(worst < 1e-10, fmt("max deviation %.6e over N <= 4", worst));
  });

  s.run("laguerre_origin", [&] {
    double worst = 0.0;
    for (int p = 0; p <= 8; ++p)
      for (int a = 0; a <= 8; ++a)
        worst = std::max(worst, rel_diff(assoc_laguerre(p, a, 0.0), binom(p + a, p)));
    return ok(worst < 1e-14, fmt("max relative deviation %.6e", worst));
  });

  s.run("radial_normalization", [&] {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
      for (int l = 0; l < n; ++l) worst = std::max(worst, std::abs(radial_moment(n, l, l, 0) - 1));
    return ok(worst < 1e-12, fmt("max deviation %.6e over N <= 6", worst));
  });

  s.run("circular_state_moments", [&] {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
      for (int k = 2; k <= 8; k += 2) {
        double expect = std::pow(n / 2.0, k);
        for (int j = 1; j <= k; ++j) expect *= 2 * n + j;
        worst = std::max(worst, rel_diff(radial_moment(n, n - 1, n - 1, k), expect));
      }
    return ok(worst < 1e-10, fmt("max relative deviation %.6e", worst));
  });

  s.run("angular_winding", [&] {
    double worst = 0.0;
    for (int w = -3; w <= 3; ++w)
      if (w != 2) worst = std::max(worst, std::abs(angular_moment(1, -1, 1, 1, 2, w)));
    const double allowed = angular_moment(1, -1, 1, 1, 2, 2);
    return ok(worst == 0.0 && std::abs(allowed) > 0.1,
              fmt("off-winding max %.6e, allowed %.6e", worst, allowed));
  });

  s.run("lg_normalization", [&] {
    double worst = 0.0;
    QuadratureSpec q;
    q.rel_tol = 1e-13;
    q.n_r = 64;
    for (int p = 0; p <= 3; ++p)
      for (int ell = -3; ell <= 3; ++ell) {
        const BeamMode mode = BeamMode::from_waist(p, ell, 1.0, 10.0);
        for (double z : {0.0, 0.5 * mode.rayleigh_range(), mode.rayleigh_range()}) {
          const double w = beam_width(mode, z);
          const auto r = integrate_1d(
              [&](double rho) { return cplx(std::norm(lg_mode_cylindrical(mode, rho, z, 0.0, gouy)) * rho); },
              0.0, 14.0 * w, q);
          worst = std::max(worst, std::abs(2 * kPi * r.value.real() - 1.0));
        }
      }
    return ok(worst < 1e-10, fmt("max deviation %.6e for p <= 3, |ell| <= 3", worst));
  });

  s.run("lg_radial_orthogonality", [&] {
    double worst = 0.0;
    QuadratureSpec q;
    q.rel_tol = 1e-13;
    q.n_r = 64;
    for (int ell = 0; ell <= 2; ++ell)
      for (int p = 0; p <= 2; ++p)
        for (int p2 = p + 1; p2 <= 3; ++p2) {
          const BeamMode a = BeamMode::from_waist(p, ell, 1.0, 10.0);
          const BeamMode b = a.with_indices(p2, ell);
          const auto r = integrate_1d(
              [&](double rho) {
                return std::conj(lg_mode_cylindrical(b, rho, 0.0, 0.0, gouy)) *
                       lg_mode_cylindrical(a, rho, 0.0, 0.0, gouy) * rho;
              },
              0.0, 140.0, q);
          worst = std::max(worst, 2 * kPi * std::abs(r.value));
        }
    return ok(worst < 1e-10, fmt("max overlap %.6e", worst));
  });

  s.run("gouy_parity", [&] {
    double worst = 0.0;
    for (int p = 0; p <= 3; ++p)
      for (int ell = 1; ell <= 3; ++ell)
        for (double z : {-2.0, -0.5, 0.3, 1.0, 5.0})
          worst = std::max(worst, std::abs(gouy_phase(p, ell, z, 1.0, gouy) -
                                           gouy_phase(p, -ell, z, 1.0, gouy)));
    return ok(worst < 1e-15, fmt("max |phase(ell) - phase(-ell)| %.6e", worst));
  });

  s.run("mode_conjugation", [&] {
    // u_{p,-ell}(phi) = u_{p,ell}(-phi)
    double worst = 0.0;
    for (int ell = 1; ell <= 3; ++ell) {
      const BeamMode a = BeamMode::from_waist(1, ell, 1.0, 5.0);
      const BeamMode b = a.with_indices(1, -ell);
      for (double z : {0.0, 20.0, -50.0})
        for (double phi : {0.3, 1.7}) {
          const cplx u = lg_mode_cylindrical(a, 4.0, z, -phi, gouy);
          const cplx v = lg_mode_cylindrical(b, 4.0, z, phi, gouy);
          worst = std::max(worst, std::abs(u - v) / std::abs(u));
        }
    }
    return ok(worst < 1e-12, fmt("max relative mismatch %.6e", worst));
  });

  s.run("gaussian_limit", [&] {
    const HydrogenState g(1, 0, 0);
    const double w0 = 1e4;
    const BeamMode beam = BeamMode::from_waist(0, 0, kWavelength, w0);
    const double v = s.flip(beam, g, g).value.real() * kPi * w0 * w0 / 2;
    return ok(std::abs(v - 1.0) < 1e-6, fmt("M pi w0^2 / 2 = %.12f at w0 = 1e4", v));
  });

  s.run("quadrature_determinism", [&] {
    const HydrogenState a(2, 1, -1), b(2, 1, 1);
    const BeamMode beam = BeamMode::from_waist(0, 1, kWavelength, 100.0);
    QuadratureSpec one = s.spec(a, b), many = one;
    one.threads = 1;
    many.threads = 4;
    const cplx x = twisted_M_forward_flip(beam, a, b, one, gouy).value;
    const cplx y = twisted_M_forward_flip(beam, a, b, many, gouy).value;
    const cplx z = twisted_M_forward_flip(beam, a, b, many, gouy).value;
    return ok(x == y && y == z, x == y && y == z ? "bit-identical across thread counts"
                                                 : fmt("differ by %.6e", std::abs(x - y)));
  });

  s.run("polynomial_exactness", [&] {
    QuadratureSpec q;
    q.n_r = 8;
    const auto r = integrate_1d([](double x) { return cplx(std::pow(x, 9)); }, 0.0, 1.0, q);
    const double dev = std::abs(r.value.real() - 0.1);
    return ok(dev < 1e-14, fmt("int_0^1 x^9 deviation %.6e", dev));
  });

  s.run("radial_scale_robustness", [&] {
    const HydrogenState a(3, 2, -1), b(3, 2, 1);
    const BeamMode beam = BeamMode::from_waist(0, 1, kWavelength, 200.0);
    const QuadratureSpec base = s.spec(a, b);
    const double ref = std::abs(twisted_M_forward_flip(beam, a, b, base, gouy).value);
    double worst = 0.0;
    for (double f : {0.8, 1.2}) {
      QuadratureSpec q = base;
      q.radial_scale *= f;
      worst = std::max(worst, rel_diff(std::abs(twisted_M_forward_flip(beam, a, b, q, gouy).value), ref));
    }
    return ok(worst < 1e-7, fmt("max relative change %.6e under +-20%% radial scale", worst));
  });

  s.run("selection_rule", [&] {
    const BeamMode beam = BeamMode::from_waist(0, 1, kWavelength, 100.0);
    bool pass = true;
    double leak = 0.0;
    for (int mi = -1; mi <= 1; ++mi)
      for (int mf = -1; mf <= 1; ++mf) {
        const HydrogenState a(2, 1, mi), b(2, 1, mf);
        const double v = std::abs(s.flip(beam, a, b).value);
        const double g = std::abs(s.general(beam, beam.with_indices(0, -1), a, b).value);
        if (mf - mi == 2) {
          pass = pass && v > 0.0 && g > 0.0;
        } else {
          pass = pass && v == 0.0;
          leak = std::max(leak, g);
        }
      }
    return ok(pass && leak < 1e-30, fmt("forbidden channels exact zero, general max %.6e", leak));
  });

  s.run("asymptotic_agreement", [&] {
    const HydrogenState a(2, 1, -1), b(2, 1, 1);
    std::vector<double> diffs;
    for (double w : {1e2, 1e3, 1e4}) {
      const BeamMode beam = BeamMode::from_waist(0, 1, kWavelength, w);
      diffs.push_back(rel_diff(s.flip(beam, a, b).value.real(), leading_order_M(beam, a, b).value.real()));
    }
    const double order = std::log10(diffs[0] / diffs[1]);
    return ok(diffs[1] < diffs[0] && order >= 1.9,
              fmt("relative difference %.6e at w0 = 1e2, observed order %.6e", diffs[0], order));
  });

  s.run("waist_scaling", [&] {
    const std::vector<double> waists{1e3, 1e4, 1e5};
    const double s1 = fit_power_law(waist_series(s, 1, {2, 1, -1}, {2, 1, 1}, waists)).slope;
    const double s2 = fit_power_law(waist_series(s, 2, {3, 2, -2}, {3, 2, 2}, waists)).slope;
    return ok(std::abs(s1 + 4) < 1e-3 && std::abs(s2 + 6) < 1e-3,
              fmt("slopes %.6e (ell=1), %.6e (ell=2)", s1, s2));
  });

  s.run("gouy_parity_falsifier", [&] {
    // p_f != p_i: the Gouy phases do not cancel, and the z-odd atomic
    // product keeps the element alive only through them.
    const HydrogenState a(3, 1, -1), b(3, 2, 1);
    const BeamMode in = BeamMode::from_waist(0, 1, kWavelength, 100.0);
    const double v = std::abs(s.general(in, in.with_indices(1, -1), a, b).value);
    const double ref = std::abs(s.flip(in, {3, 1, -1}, {3, 1, 1}).value);
    return ok(v > 1e-3 * ref, fmt("|M| %.6e, equal-p reference %.6e", v, ref));
  });

  s.run("mirror_symmetry", [&] {
    double worst = 0.0;
    const BeamMode in = BeamMode::from_waist(0, 1, kWavelength, 100.0);
    const BeamMode mirror = in.with_indices(0, -1);
    const HydrogenState a(3, 1, -1), b(3, 2, 1), am(3, 1, 1), bm(3, 2, -1);
    worst = std::max(worst, rel_diff(std::abs(s.general(in, in.with_indices(1, -1), a, b).value),
                                     std::abs(s.general(mirror, mirror.with_indices(1, 1), am, bm).value)));
    const HydrogenState c(3, 2, -2), d(3, 2, 0), cm(3, 2, 2), dm(3, 2, 0);
    worst = std::max(worst, rel_diff(std::abs(s.flip(in, c, d).value), std::abs(s.flip(mirror, cm, dm).value)));
    return ok(worst < 1e-10, fmt("max relative mismatch %.6e", worst));
  });

  s.run("angular_restriction", [&] {
    const BeamMode beam = BeamMode::from_waist(0, 2, kWavelength, 100.0);
    const AmplitudeResult r = s.flip(beam, {3, 1, -1}, {3, 1, 1});
    return ok(r.value == cplx(0.0, 0.0), fmt("|M| = %.6e for ell = 2, L_i = L_f = 1", std::abs(r.value)));
  });

  s.run("plane_wave_reduction", [&] {
    const HydrogenState g(1, 0, 0);
    const double w0 = 1e4, theta = 0.3;
    const BeamMode in = BeamMode::from_waist(0, 0, 2 * kPi, w0);
    ScatteringChannel ch{in, in, g, g, theta, true, 1.0, QConvention::exact, gouy};
    const cplx pw = plane_wave_M(ch.momentum_transfer(), g, g, s.spec(g, g)).value;
    const cplx tw = s.general(in, in, g, g, theta).value * (kPi * w0 * w0 / 2);
    const double dev = std::abs(tw - pw) / std::abs(pw);
    return ok(dev < 1e-5, fmt("relative deviation %.6e at Theta = 0.3, w0 = 1e4", dev));
  });

  s.run("closed_form_value", [&] {
    const double w0 = 100.0;
    const BeamMode beam = BeamMode::from_waist(0, 1, kWavelength, w0);
    const double v = closed_form_flip_M(beam, 2).value.real() * std::pow(w0, 4);
    const double r2 = radial_moment(2, 1, 1, 2);
    const double ang = angular_moment(1, 0, 1, 0, 2, 0);
    const bool pass = rel_diff(v, 48 / kPi) < 1e-10 && rel_diff(r2, 30) < 1e-12 && rel_diff(ang, 0.4) < 1e-12;
    return ok(pass, fmt("w0^4 M = %.12f, <r^2> = %.12f", v, r2));
  });

  s.run("dipole_oracle", [&] {
    const double d = std::abs(dipole_series_term(1.0, 1, {1, 0, 0}, {2, 1, 0}));
    const double expect = 128 * std::sqrt(2.0) / 243;
    return ok(std::abs(d - expect) < 1e-8, fmt("<1s|z|2p0> = %.12f, expected %.12f", d, expect));
  });

  s.run("gos_dipole_limit", [&] {
    const double g = gos(1e-4, {1, 0, 0}, {2, 1, 0});
    const double el = gos(0.7, {1, 0, 0}, {1, 0, 0});
    return ok(std::abs(g - 0.208095) < 1e-5 && el == 0.0, fmt("GOS(1s->2p0, q = 1e-4) = %.9f", g));
  });

  s.run("general_matches_forward", [&] {
    double worst = 0.0;
    for (double w : {1e2, 1e3}) {
      const BeamMode beam = BeamMode::from_waist(0, 1, kWavelength, w);
      const HydrogenState a(3, 2, -1), b(3, 2, 1);
      worst = std::max(worst, rel_diff(std::abs(s.general(beam, beam.with_indices(0, -1), a, b).value),
                                       std::abs(s.flip(beam, a, b).value)));
    }
    return ok(worst < 1e-10, fmt("max relative mismatch %.6e at Theta = 0", worst));
  });

  s.run("power_law_fit", [&] {
    std::vector<std::pair<double, double>> pts;
    for (double x : {1e2, 1e3, 1e4, 1e5}) pts.emplace_back(x, 3.5 * std::pow(x, -4.0));
    const FitResult f = fit_power_law(pts);
    return ok(std::abs(f.slope + 4) < 1e-12, fmt("slope %.15f on exact data", f.slope));
  });

  const nlohmann::json tmpl = {
      {"beam", {{"p", 0}, {"ell", 1}, {"wavelength_au", kWavelength}}},
      {"atom_in", {{"n", 2}, {"l", 1}, {"m", -1}}},
      {"atom_out", {{"n", 2}, {"l", 1}, {"m", 1}}},
      {"scattering", {{"mode", "forward_flip"}}},
      {"quadrature", {{"rel_tol", profile.rel_tol}}}};
  SweepSpec sweep{SweepAxis::waist, {100.0, 1000.0}, tmpl};

  s.run("sweep_single_consistency", [&] {
    const std::string csv = run_sweep(sweep, gouy);
    nlohmann::json one = sweep_point_config(sweep, 100.0);
    const ElementRecord rec = run_matrix_element(one, gouy);
    const std::string re = format_double(rec.result.value.real());
    const std::size_t line = csv.find('\n') + 1;
    const std::string row = csv.substr(line, csv.find('\n', line) - line);
    const bool pass = row.rfind("waist,100," + re + ",", 0) == 0;
    return ok(pass, fmt("single-point re M = %.6e", rec.result.value.real()));
  });

  s.run("csv_determinism", [&] {
    const bool same = run_sweep(sweep, gouy) == run_sweep(sweep, gouy);
    return ok(same, same ? "repeated sweeps byte-identical" : "repeated sweeps differ");
  });

  return s.report;
}

}  // namespace lgs
