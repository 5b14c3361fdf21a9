#include "lgscatter/beams.hpp"

#include <cmath>
#include <string>

#include "lgscatter/errors.hpp"
#include "lgscatter/specfun.hpp"

namespace lgs {
namespace {

// sqrt(2 p! / (pi (p+|ell|)!))
double mode_normalization(int p, int abs_ell) {
  double ratio = 1.0;  // (p+|ell|)! / p!
  for (int k = p + 1; k <= p + abs_ell; ++k) ratio *= k;
  return std::sqrt(2.0 / (kPi * ratio));
}

// Everything except the overall waist power; `w_ratio` is w(z)/w0.
cplx mode_body(const BeamMode& mode, double rho, double z, double phi,
               GouyConvention convention, double& w_ratio) {
  const int abs_ell = mode.abs_ell();
  const double zr = mode.rayleigh_range();
  w_ratio = std::sqrt(1.0 + (z / zr) * (z / zr));
  const double w = mode.waist() * w_ratio;
  const double arg = 2.0 * rho * rho / (w * w);
  const double amplitude = mode_normalization(mode.p(), abs_ell) *
                           std::pow(std::sqrt(2.0) * rho, abs_ell) *
                           std::exp(-rho * rho / (w * w)) *
                           assoc_laguerre(mode.p(), abs_ell, arg);
  const double curvature = mode.wavenumber() * rho * rho * z / (2.0 * (z * z + zr * zr));
  const double phase = mode.ell() * phi + curvature -
                       gouy_phase(mode.p(), mode.ell(), z, zr, convention);
  return std::polar(amplitude, phase);
}

}  // namespace

BeamMode::BeamMode(int p, int ell, double wavelength, double rayleigh_range)
    : p_(p), ell_(ell), wavelength_(wavelength), rayleigh_range_(rayleigh_range) {
  if (p < 0) throw DomainError("BeamMode: radial index p must be non-negative");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw DomainError("BeamMode: wavelength must be positive and finite");
  }
  if (!(rayleigh_range > 0.0) || !std::isfinite(rayleigh_range)) {
    throw DomainError("BeamMode: rayleigh_range must be positive and finite");
  }
  waist_ = std::sqrt(wavelength * rayleigh_range / kPi);
  wavenumber_ = 2.0 * kPi / wavelength;
}

BeamMode BeamMode::from_waist(int p, int ell, double wavelength, double waist) {
  if (!(waist > 0.0)) throw DomainError("BeamMode: waist must be positive");
  return BeamMode(p, ell, wavelength, kPi * waist * waist / wavelength);
}

BeamMode BeamMode::with_indices(int p, int ell) const {
  return BeamMode(p, ell, wavelength_, rayleigh_range_);
}

double beam_width(const BeamMode& mode, double z) {
  const double t = z / mode.rayleigh_range();
  return mode.waist() * std::sqrt(1.0 + t * t);
}

double gouy_phase(int p, int ell, double z, double rayleigh_range,
                  GouyConvention convention) {
  const int winding = convention == GouyConvention::abs_winding ? std::abs(ell) : ell;
  return (2.0 * p + winding + 1.0) * std::atan(z / rayleigh_range);
}

cplx lg_mode_cylindrical(const BeamMode& mode, double rho, double z, double phi,
                         GouyConvention convention) {
  double w_ratio = 1.0;
  const cplx body = mode_body(mode, rho, z, phi, convention, w_ratio);
  const double w = mode.waist() * w_ratio;
  return body / std::pow(w, mode.abs_ell() + 1);
}

cplx lg_mode_spherical(const BeamMode& mode, double r, double theta, double phi,
                       GouyConvention convention) {
  return lg_mode_cylindrical(mode, r * std::abs(std::sin(theta)), r * std::cos(theta), phi,
                             convention);
}

cplx vector_potential_amplitude(const BeamMode& mode, double r, double theta, double phi,
                                GouyConvention convention) {
  const double z = r * std::cos(theta);
  return lg_mode_spherical(mode, r, theta, phi, convention) *
         std::polar(1.0, mode.wavenumber() * z);
}

cplx lg_mode_scaled(const BeamMode& mode, double rho, double z, double phi,
                    GouyConvention convention) {
  double w_ratio = 1.0;
  const cplx body = mode_body(mode, rho, z, phi, convention, w_ratio);
  return body / std::pow(w_ratio, mode.abs_ell() + 1);
}

}  // namespace lgs
