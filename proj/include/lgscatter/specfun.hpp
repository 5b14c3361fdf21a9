#pragma once

// Special functions and hydrogen bound states. Atomic units throughout
// (lengths in bohr, energies in hartree). Spherical harmonics follow the
// Condon-Shortley phase convention.

#include <complex>

namespace lgs {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Bound hydrogen state |N L M>. Construction validates 0 <= L < N and
/// |M| <= L, throwing DomainError otherwise.
class HydrogenState {
 public:
  HydrogenState(int n, int l, int m);

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int m() const noexcept { return m_; }

  /// -1/(2N^2) hartree.
  double energy() const noexcept { return -0.5 / (double(n_) * n_); }
  /// N^2 bohr; the target size used in the a/w0 guards.
  double characteristic_radius() const noexcept { return double(n_) * n_; }

  friend bool operator==(const HydrogenState&, const HydrogenState&) = default;

 private:
  int n_, l_, m_;
};

/// Associated Laguerre polynomial L_p^alpha(x) by the three-term recurrence
/// in p. Exact at x = 0, where it equals binom(p + alpha, p).
double assoc_laguerre(int p, int alpha, double x);

/// Fully normalized associated Legendre function, including the
/// Condon-Shortley phase, such that Y_LM(theta, phi) =
/// normalized_legendre(L, M, cos theta) * exp(i M phi). Negative M is
/// accepted. `sin_theta` must be the non-negative sqrt(1 - x^2); it is
/// passed separately so callers on a cos(theta) grid avoid a round trip.
double normalized_legendre(int l, int m, double cos_theta, double sin_theta);
double normalized_legendre(int l, int m, double cos_theta);

/// Y_LM(theta, phi). Throws DomainError when |M| > L or L < 0.
cplx spherical_harmonic(int l, int m, double theta, double phi);

/// Radial function R_NL(r), normalized so that int R^2 r^2 dr = 1.
/// Throws DomainError unless 0 <= L < N.
double hydrogen_radial(int n, int l, double r);

/// Hydrogen orbital with its normalization constants precomputed; the hot
/// path inside matrix-element integrands.
class HydrogenOrbital {
 public:
  explicit HydrogenOrbital(const HydrogenState& state);

  const HydrogenState& state() const noexcept { return state_; }

  double radial(double r) const;
  /// Polar factor; psi = radial(r) * polar(x, s) * exp(i M phi).
  double polar(double cos_theta, double sin_theta) const {
    return normalized_legendre(state_.l(), state_.m(), cos_theta, sin_theta);
  }
  cplx operator()(double r, double theta, double phi) const;

 private:
  HydrogenState state_;
  double radial_norm_;
};

cplx hydrogen_wavefunction(const HydrogenState& state, double r, double theta,
                           double phi);

/// int_0^inf R_{N,Lf}(r) r^power R_{N,Li}(r) r^2 dr, evaluated with a
/// Gauss-Laguerre rule that is exact for the polynomial integrand.
double radial_moment(int n, int l_i, int l_f, int power);

/// int Y_{Lf,Mf}^* sin^sin_power(theta) exp(i winding phi) Y_{Li,Mi} dOmega.
/// The phi integral is done analytically, so the result is exactly zero
/// unless winding == Mf - Mi. The theta integral uses a rule that is exact
/// for the integrand (Gauss-Legendre in cos theta when the total power of
/// sin theta is even, equispaced in theta when it is odd).
double angular_moment(int l_i, int m_i, int l_f, int m_f, int sin_power,
                      int winding);

}  // namespace lgs
