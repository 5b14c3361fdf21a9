#pragma once

// Laguerre-Gaussian modes in the paraxial approximation. The beam
// propagates along +z with its waist at z = 0; the atom sits at the origin.

#include <complex>

namespace lgs {

using cplx = std::complex<double>;

/// Which winding enters the Gouy phase. `abs_winding` is the physical
/// (2p + |ell| + 1) form. `signed_winding` replaces |ell| by ell and exists
/// only as a deliberate mutation for falsification checks.
enum class GouyConvention { abs_winding, signed_winding };

class BeamMode {
 public:
  /// Throws DomainError unless p >= 0, wavelength > 0, rayleigh_range > 0.
  BeamMode(int p, int ell, double wavelength, double rayleigh_range);

  /// Mode with the given waist; rayleigh_range = pi w0^2 / wavelength.
  static BeamMode from_waist(int p, int ell, double wavelength, double waist);

  int p() const noexcept { return p_; }
  int ell() const noexcept { return ell_; }
  int abs_ell() const noexcept { return ell_ < 0 ? -ell_ : ell_; }
  double wavelength() const noexcept { return wavelength_; }
  double rayleigh_range() const noexcept { return rayleigh_range_; }
  double waist() const noexcept { return waist_; }
  double wavenumber() const noexcept { return wavenumber_; }

  /// False when wavelength >= rayleigh_range / 10. Advisory only.
  bool paraxial() const noexcept { return wavelength_ < 0.1 * rayleigh_range_; }

  /// Same geometry with a different (p, ell).
  BeamMode with_indices(int p, int ell) const;

  friend bool operator==(const BeamMode&, const BeamMode&) = default;

 private:
  int p_;
  int ell_;
  double wavelength_;
  double rayleigh_range_;
  double waist_;
  double wavenumber_;
};

/// w(z) = w0 sqrt(1 + z^2/zR^2).
double beam_width(const BeamMode& mode, double z);

/// (2p + |ell| + 1) atan(z / zR), or (2p + ell + 1) atan(z / zR) under the
/// signed mutation.
double gouy_phase(int p, int ell, double z, double rayleigh_range,
                  GouyConvention convention = GouyConvention::abs_winding);

/// u_{p,ell}(rho, z, phi): normalization, radial power, Gaussian envelope,
/// Laguerre factor, azimuthal winding, wavefront curvature
/// exp(i k rho^2 z / (2 (z^2 + zR^2))) and the Gouy factor. Units bohr^-1.
cplx lg_mode_cylindrical(const BeamMode& mode, double rho, double z, double phi,
                         GouyConvention convention = GouyConvention::abs_winding);

/// lg_mode_cylindrical at rho = r |sin theta|, z = r cos theta.
cplx lg_mode_spherical(const BeamMode& mode, double r, double theta, double phi,
                       GouyConvention convention = GouyConvention::abs_winding);

/// u * exp(i k z) with z = r cos theta; the scalar part of the vector
/// potential. Polarization enters matrix elements as a scalar overlap.
cplx vector_potential_amplitude(const BeamMode& mode, double r, double theta, double phi,
                                GouyConvention convention = GouyConvention::abs_winding);

/// w0^{|ell|+1} * u_{p,ell}(rho, z, phi). Same function with the waist
/// power removed, so matrix elements for very wide beams stay representable.
cplx lg_mode_scaled(const BeamMode& mode, double rho, double z, double phi,
                    GouyConvention convention = GouyConvention::abs_winding);

}  // namespace lgs
