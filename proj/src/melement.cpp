#include "lgscatter/melement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgscatter/errors.hpp"

namespace lgs {
namespace {

constexpr cplx kI{0.0, 1.0};

// Smallest c >= 40 with c^d e^{-c} below 1e-18 of the peak d^d e^{-d}.
double cutoff_multiple(int degree) {
  const double d = degree;
  const double log_peak = d > 0 ? d * std::log(d) - d : 0.0;
  double c = std::max(40.0, d);
  while (d * std::log(c) - c > log_peak - 18.0 * std::log(10.0)) c += 1.0;
  return c;
}

double factorial_ratio(int lo, int hi) {  // hi! / lo!
  double r = 1.0;
  for (int k = lo + 1; k <= hi; ++k) r *= k;
  return r;
}

// Converts an integral of M * scale into the reported amplitude, applying
// the underflow guard when requested.
AmplitudeResult finish_scaled(const QuadratureResult& q, double log_scale, bool guard,
                              int rescale_power, double log_guard_scale, Method method) {
  AmplitudeResult out;
  out.method = method;
  out.converged = q.converged;
  if (guard) {
    const double f = std::exp(log_guard_scale - log_scale);
    out.value = q.value * f;
    out.error_estimate = q.error_estimate * f;
    out.rescale_power = rescale_power;
  } else {
    const double f = std::exp(-log_scale);
    out.value = q.value * f;
    out.error_estimate = q.error_estimate * f;
  }
  return out;
}

AmplitudeResult exact_zero(Method method) {
  AmplitudeResult out;
  out.method = method;
  return out;
}

void check_forward_flip(const BeamMode& beam, const HydrogenState& in, const HydrogenState& out) {
  if (in.n() != out.n()) {
    throw DomainError("forward flip requires N_in == N_out (elastic)");
  }
  if (in.n() < beam.abs_ell() + 1) {
    throw DomainError("forward flip requires N >= |ell| + 1, got N=" + std::to_string(in.n()) +
                      " ell=" + std::to_string(beam.ell()));
  }
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::plane_wave: return "plane_wave";
    case Method::general_quadrature: return "general_quadrature";
    case Method::forward_quadrature: return "forward_quadrature";
    case Method::leading_order: return "leading_order";
    case Method::closed_form: return "closed_form";
  }
  return "unknown";
}

Vec3 ScatteringChannel::momentum_transfer() const {
  const double ki = k_in();
  const double kf = k_out();
  const double st = std::sin(theta_scatter);
  const double ct = std::cos(theta_scatter);
  Vec3 q{-kf * st, 0.0, ki - kf * ct};
  if (q_convention == QConvention::paper_small_angle) {
    const double norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    if (norm > 0.0) {
      const double target = ki * std::abs(st);
      for (double& c : q) c *= target / norm;
    }
  }
  return q;
}

void ScatteringChannel::validate() const {
  if (!(polarization_overlap >= -1.0 && polarization_overlap <= 1.0)) {
    throw DomainError("polarization_overlap must lie in [-1, 1]");
  }
  if (!(theta_scatter >= 0.0 && theta_scatter <= kPi)) {
    throw DomainError("scattering angle must lie in [0, pi]");
  }
  if (elastic) {
    if (atom_in.energy() != atom_out.energy()) {
      throw DomainError("elastic channel requires equal atomic energies (N_in == N_out)");
    }
    if (beam_in.wavelength() != beam_out.wavelength()) {
      throw DomainError("elastic channel requires equal photon wavelengths");
    }
  } else if (q_convention == QConvention::paper_small_angle) {
    throw DomainError("the small-angle q convention is defined for elastic channels only");
  }
}

QuadratureSpec default_quadrature(const HydrogenState& atom_in, const HydrogenState& atom_out) {
  QuadratureSpec spec;
  spec.radial_scale = 1.0 / (1.0 / atom_in.n() + 1.0 / atom_out.n());
  return spec;
}

int azimuthal_selection(int ell_in, int ell_out, int m_in, int m_out) {
  return ell_in - ell_out + m_in - m_out;
}

double flip_prefactor(int p, int abs_ell) {
  const double ratio = factorial_ratio(p, p + abs_ell);  // (p+|l|)!/p!
  const double binom = ratio / factorial_ratio(0, abs_ell);
  return 2.0 / (kPi * ratio) * std::pow(2.0, abs_ell) * binom * binom;
}

bool underflow_guard(int abs_ell, int n, double waist) {
  const double a = double(n) * n;
  return abs_ell * std::log10(a / waist) < -120.0;
}

AmplitudeResult plane_wave_M(const Vec3& q, const HydrogenState& atom_in,
                             const HydrogenState& atom_out, const QuadratureSpec& spec) {
  const HydrogenOrbital oi(atom_in), of(atom_out);
  QuadratureResult r;
  if (q[0] == 0.0 && q[1] == 0.0) {
    const double qz = q[2];
    r = integrate_2d_after_phi(
        [&](double rr, double x, double s) {
          return of.radial(rr) * of.polar(x, s) * oi.radial(rr) * oi.polar(x, s) *
                 std::polar(1.0, qz * rr * x);
        },
        atom_in.m() == atom_out.m(), spec);
  } else {
    const int dm = atom_in.m() - atom_out.m();
    r = integrate_3d(
        [&](const SphericalPoint& p) {
          const double qr = p.r * (q[0] * p.sin_theta * std::cos(p.phi) +
                                   q[1] * p.sin_theta * std::sin(p.phi) + q[2] * p.cos_theta);
          return of.radial(p.r) * of.polar(p.cos_theta, p.sin_theta) * oi.radial(p.r) *
                 oi.polar(p.cos_theta, p.sin_theta) * std::polar(1.0, qr + dm * p.phi);
        },
        spec);
  }
  AmplitudeResult out;
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  out.method = Method::plane_wave;
  out.converged = r.converged;
  return out;
}

AmplitudeResult plane_wave_M(const Vec3& q, const HydrogenState& atom_in,
                             const HydrogenState& atom_out) {
  return plane_wave_M(q, atom_in, atom_out, default_quadrature(atom_in, atom_out));
}

cplx dipole_series_term(double q, int n, const HydrogenState& atom_in,
                        const HydrogenState& atom_out) {
  if (q < 0.0) throw DomainError("dipole_series_term: q must be non-negative");
  if (n < 0) throw DomainError("dipole_series_term: n must be non-negative");
  const HydrogenOrbital oi(atom_in), of(atom_out);
  QuadratureSpec spec = default_quadrature(atom_in, atom_out);
  spec.rel_tol = 1e-13;
  const QuadratureResult r = integrate_2d_after_phi(
      [&](double rr, double x, double s) -> cplx {
        return of.radial(rr) * of.polar(x, s) * std::pow(rr * x, n) * oi.radial(rr) *
               oi.polar(x, s);
      },
      atom_in.m() == atom_out.m(), spec);
  return std::pow(q, n) * r.value;
}

AmplitudeResult compton_M(const ScatteringChannel& channel, const QuadratureSpec& spec) {
  channel.validate();
  AmplitudeResult r = plane_wave_M(channel.momentum_transfer(), channel.atom_in,
                                   channel.atom_out, spec);
  r.value *= channel.polarization_overlap;
  r.error_estimate *= std::abs(channel.polarization_overlap);
  return r;
}

AmplitudeResult compton_M(const ScatteringChannel& channel) {
  return compton_M(channel, default_quadrature(channel.atom_in, channel.atom_out));
}

AmplitudeResult twisted_M_general(const ScatteringChannel& channel, const QuadratureSpec& spec) {
  channel.validate();
  const BeamMode& bi = channel.beam_in;
  const BeamMode& bf = channel.beam_out;
  const HydrogenOrbital oi(channel.atom_in), of(channel.atom_out);
  const GouyConvention gouy = channel.gouy;

  // The integrand carries w_in^{|l_in|+1} w_out^{|l_out|+1} to stay in range.
  const double log_scale = (bi.abs_ell() + 1) * std::log(bi.waist()) +
                           (bf.abs_ell() + 1) * std::log(bf.waist());
  const int n_max = std::max(channel.atom_in.n(), channel.atom_out.n());
  const int ell_max = std::max(bi.abs_ell(), bf.abs_ell());
  const bool guard = underflow_guard(ell_max, n_max, bi.waist());
  const int rescale_power = bi.abs_ell() + bf.abs_ell() + 2;
  const double log_guard_scale = rescale_power * std::log(bi.waist());

  const Vec3 q = channel.momentum_transfer();
  const bool q_zero = q[0] == 0.0 && q[1] == 0.0 && q[2] == 0.0;
  const bool curvature_cancels = channel.k_in() == channel.k_out() &&
                                 bi.rayleigh_range() == bf.rayleigh_range();

  QuadratureSpec local = spec;
  if (!(q_zero && curvature_cancels) || channel.theta_scatter != 0.0) {
    local.radial_rule = RadialRule::mapped_legendre;
    if (local.radial_cutoff == 0.0) {
      const int degree = channel.atom_in.n() + channel.atom_out.n() + bi.abs_ell() +
                         bf.abs_ell();
      local.radial_cutoff = cutoff_multiple(degree) * local.radial_scale;
    }
  }

  QuadratureResult r;
  if (channel.theta_scatter == 0.0) {
    const int winding = azimuthal_selection(bi.ell(), bf.ell(), channel.atom_in.m(),
                                            channel.atom_out.m());
    if (winding != 0) return exact_zero(Method::general_quadrature);
    const double qz = q[2];
    r = integrate_2d_after_phi(
        [&](double rr, double x, double s) {
          const double rho = rr * s;
          const double z = rr * x;
          const cplx ui = lg_mode_scaled(bi, rho, z, 0.0, gouy);
          const cplx uf = lg_mode_scaled(bf, rho, z, 0.0, gouy);
          return of.radial(rr) * of.polar(x, s) * std::conj(uf) * std::polar(1.0, qz * z) * ui *
                 oi.radial(rr) * oi.polar(x, s);
        },
        true, local);
  } else {
    const double ct = std::cos(channel.theta_scatter);
    const double st = std::sin(channel.theta_scatter);
    const int dm = channel.atom_in.m() - channel.atom_out.m();
    r = integrate_3d(
        [&](const SphericalPoint& p) {
          const double rho = p.r * p.sin_theta;
          const double X = rho * std::cos(p.phi);
          const double Y = rho * std::sin(p.phi);
          const double Z = p.r * p.cos_theta;
          // Coordinates in the frame whose z axis is k_f.
          const double xp = X * ct - Z * st;
          const double zp = X * st + Z * ct;
          const double rho_p = std::hypot(xp, Y);
          const double phi_p = std::atan2(Y, xp);
          const cplx ui = lg_mode_scaled(bi, rho, Z, p.phi, gouy);
          const cplx uf = lg_mode_scaled(bf, rho_p, zp, phi_p, gouy);
          const double qr = q[0] * X + q[1] * Y + q[2] * Z;
          return of.radial(p.r) * of.polar(p.cos_theta, p.sin_theta) * std::conj(uf) *
                 std::polar(1.0, qr + dm * p.phi) * ui * oi.radial(p.r) *
                 oi.polar(p.cos_theta, p.sin_theta);
        },
        local);
  }
  return finish_scaled(r, log_scale, guard, rescale_power, log_guard_scale,
                       Method::general_quadrature);
}

AmplitudeResult twisted_M_general(const ScatteringChannel& channel) {
  return twisted_M_general(channel, default_quadrature(channel.atom_in, channel.atom_out));
}

AmplitudeResult twisted_M_forward_flip(const BeamMode& beam, const HydrogenState& atom_in,
                                       const HydrogenState& atom_out, const QuadratureSpec& spec,
                                       GouyConvention gouy) {
  check_forward_flip(beam, atom_in, atom_out);
  const int ell = beam.ell();
  const int abs_ell = beam.abs_ell();
  const int p = beam.p();
  if (azimuthal_selection(ell, -ell, atom_in.m(), atom_out.m()) != 0 ||
      atom_in.l() + atom_out.l() < 2 * abs_ell) {
    return exact_zero(Method::forward_quadrature);
  }

  const HydrogenOrbital oi(atom_in), of(atom_out);
  const double norm = 2.0 / (kPi * factorial_ratio(p, p + abs_ell));
  const double zr = beam.rayleigh_range();
  const double w0 = beam.waist();
  // Outgoing mode (winding -ell) conjugated against the incoming one; under
  // the signed mutation the Gouy phases leave exp(-2 i ell atan(z/zR)).
  const bool mutated = gouy == GouyConvention::signed_winding && ell != 0;

  const QuadratureResult r = integrate_2d_after_phi(
      [&](double rr, double x, double s) {
        const double z = rr * x;
        const double rho = rr * s;
        const double w_ratio2 = 1.0 + (z / zr) * (z / zr);
        const double arg = 2.0 * rho * rho / (w0 * w0 * w_ratio2);
        const double lag = assoc_laguerre(p, abs_ell, arg);
        const double profile = norm * std::pow(w_ratio2, -(abs_ell + 1)) *
                               std::pow(2.0 * rho * rho, abs_ell) * std::exp(-arg) * lag * lag;
        cplx value = of.radial(rr) * of.polar(x, s) * profile * oi.radial(rr) * oi.polar(x, s);
        if (mutated) value *= std::polar(1.0, -2.0 * ell * std::atan(z / zr));
        return value;
      },
      true, spec);

  const int power = 2 * (abs_ell + 1);
  const double log_scale = power * std::log(w0);
  return finish_scaled(r, log_scale, underflow_guard(abs_ell, atom_in.n(), w0), power, log_scale,
                       Method::forward_quadrature);
}

AmplitudeResult twisted_M_forward_flip(const BeamMode& beam, const HydrogenState& atom_in,
                                       const HydrogenState& atom_out, GouyConvention gouy) {
  return twisted_M_forward_flip(beam, atom_in, atom_out, default_quadrature(atom_in, atom_out),
                                gouy);
}

namespace {

AmplitudeResult moment_form(const BeamMode& beam, int n, double moments, Method method) {
  const int abs_ell = beam.abs_ell();
  const int power = 2 * (abs_ell + 1);
  const double scaled = flip_prefactor(beam.p(), abs_ell) * moments;
  AmplitudeResult out;
  out.method = method;
  if (underflow_guard(abs_ell, n, beam.waist())) {
    out.value = scaled;
    out.rescale_power = power;
  } else {
    out.value = scaled * std::exp(-power * std::log(beam.waist()));
  }
  return out;
}

}  // namespace

AmplitudeResult leading_order_M(const BeamMode& beam, const HydrogenState& atom_in,
                                const HydrogenState& atom_out) {
  check_forward_flip(beam, atom_in, atom_out);
  const int ell = beam.ell();
  const int abs_ell = beam.abs_ell();
  if (azimuthal_selection(ell, -ell, atom_in.m(), atom_out.m()) != 0) {
    return exact_zero(Method::leading_order);
  }
  const double moments =
      radial_moment(atom_in.n(), atom_in.l(), atom_out.l(), 2 * abs_ell) *
      angular_moment(atom_in.l(), atom_in.m(), atom_out.l(), atom_out.m(), 2 * abs_ell, 2 * ell);
  return moment_form(beam, atom_in.n(), moments, Method::leading_order);
}

AmplitudeResult closed_form_flip_M(const BeamMode& beam, int n) {
  const int abs_ell = beam.abs_ell();
  if (n < abs_ell + 1) {
    throw DomainError("closed form requires N >= |ell| + 1");
  }
  const double moments = radial_moment(n, abs_ell, abs_ell, 2 * abs_ell) *
                         angular_moment(abs_ell, 0, abs_ell, 0, 2 * abs_ell, 0);
  return moment_form(beam, n, moments, Method::closed_form);
}

AmplitudeResult closed_form_flip_M(const BeamMode& beam, const HydrogenState& atom_in,
                                   const HydrogenState& atom_out) {
  if (atom_in.l() != beam.abs_ell() || atom_out.l() != beam.abs_ell()) {
    throw DomainError("closed form requires L_i = L_f = |ell|");
  }
  if (atom_in.n() != atom_out.n()) throw DomainError("closed form requires N_in == N_out");
  return closed_form_flip_M(beam, atom_in.n());
}

double gos(double q, const HydrogenState& atom_in, const HydrogenState& atom_out) {
  if (!(q > 0.0)) throw DomainError("gos: q must be positive");
  const double de = atom_out.energy() - atom_in.energy();
  if (de == 0.0) return 0.0;
  QuadratureSpec spec = default_quadrature(atom_in, atom_out);
  spec.rel_tol = 1e-12;
  const cplx m = plane_wave_M({0.0, 0.0, q}, atom_in, atom_out, spec).value;
  return de * std::norm(m) / (q * q);
}

}  // namespace lgs
